#include "toeplitz/circle/symbol.hpp"

#include <cmath>
#include <sstream>

#include "toeplitz/parallel.hpp"

namespace toeplitz::circle {

namespace {

constexpr double kKernelPrune = 1e-15;

void accumulate(std::map<int, CMatrix>& into, int key, const CMatrix& block) {
    auto it = into.find(key);
    if (it == into.end()) {
        into.emplace(key, block);
    } else {
        it->second += block;
    }
}

double block_max(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

long long binomial(int d, int alpha) {
    long long c = 1;
    for (int i = 0; i < alpha; ++i) {
        c = c * (d - i) / (i + 1);
        if (c == 0) break;
    }
    return c;
}

double excised_power(int n, int degree) {
    if (n == 0) return 0.0;
    const double a = std::abs(n);
    if (degree >= 0) {
        double v = 1.0;
        for (int i = 0; i < degree; ++i) v *= a;
        return v;
    }
    return std::pow(a, degree);
}

ClassicalSymbol ClassicalSymbol::zero(int order, int depth, int rows, int cols) {
    ClassicalSymbol s;
    s.order = order;
    s.depth = depth;
    s.rows = rows;
    s.cols = cols;
    s.comps.reserve(depth);
    for (int j = 0; j < depth; ++j) {
        s.comps.push_back({order - j, TrigPoly(rows, cols), TrigPoly(rows, cols)});
    }
    return s;
}

void ClassicalSymbol::validate() const {
    if (depth < 1) throw InputError("depth must be positive");
    if (rows < 1 || cols < 1) throw InputError("symbol dimensions must be positive");
    if (static_cast<int>(comps.size()) != depth) {
        throw InputError("symbol must carry exactly depth components");
    }
    for (int j = 0; j < depth; ++j) {
        const auto& c = comps[j];
        if (c.degree != order - j) {
            std::ostringstream os;
            os << "components[" << j << "].degree: expected " << order - j << ", got " << c.degree;
            throw InputError(os.str());
        }
        for (const TrigPoly* p : {&c.plus, &c.minus}) {
            if (p->rows() != rows || p->cols() != cols) {
                std::ostringstream os;
                os << "components[" << j << "]: coefficient shape differs from symbol shape";
                throw InputError(os.str());
            }
        }
    }
}

int ClassicalSymbol::bandwidth() const {
    int k = 0;
    for (const auto& c : comps) k = std::max(k, c.bandwidth());
    return k;
}

void SmoothingKernel::add(int m, int n, const CMatrix& block) {
    if (block.rows() != rows_ || block.cols() != cols_) {
        throw InputError("kernel block has wrong shape");
    }
    accumulate(columns_[n], m, block);
}

CMatrix SmoothingKernel::entry(int m, int n) const {
    if (const Column* c = column(n)) {
        auto it = c->find(m);
        if (it != c->end()) return it->second;
    }
    return CMatrix::Zero(rows_, cols_);
}

const SmoothingKernel::Column* SmoothingKernel::column(int n) const {
    auto it = columns_.find(n);
    return it == columns_.end() ? nullptr : &it->second;
}

int SmoothingKernel::column_extent() const {
    if (columns_.empty()) return 0;
    return std::max(std::abs(columns_.begin()->first), std::abs(columns_.rbegin()->first));
}

int SmoothingKernel::row_extent() const {
    int e = 0;
    for (const auto& [n, col] : columns_) {
        if (col.empty()) continue;
        e = std::max({e, std::abs(col.begin()->first), std::abs(col.rbegin()->first)});
    }
    return e;
}

std::size_t SmoothingKernel::size() const {
    std::size_t s = 0;
    for (const auto& [n, col] : columns_) s += col.size();
    return s;
}

double SmoothingKernel::max_abs() const {
    double v = 0.0;
    for (const auto& [n, col] : columns_) {
        for (const auto& [m, b] : col) v = std::max(v, block_max(b));
    }
    return v;
}

SmoothingKernel SmoothingKernel::pruned(double tol) const {
    SmoothingKernel out(rows_, cols_);
    for (const auto& [n, col] : columns_) {
        for (const auto& [m, b] : col) {
            if (block_max(b) > tol) out.columns_[n].emplace(m, b);
        }
    }
    return out;
}

SmoothingKernel::Column column(const Operator& a, int n) {
    SmoothingKernel::Column out;
    if (n != 0) {
        const int sign = n > 0 ? 1 : -1;
        for (const auto& comp : a.symbol.comps) {
            const double f = excised_power(n, comp.degree);
            for (const auto& [k, c] : comp.branch(sign).coefficients()) accumulate(out, n + k, f * c);
        }
    }
    if (const auto* kc = a.kernel.column(n)) {
        for (const auto& [m, b] : *kc) accumulate(out, m, b);
    }
    return out;
}

std::map<int, CMatrix> row(const Operator& a, int m) {
    std::map<int, CMatrix> out;
    for (const auto& comp : a.symbol.comps) {
        for (int sign : {1, -1}) {
            for (const auto& [k, c] : comp.branch(sign).coefficients()) {
                const int n = m - k;
                if (n == 0 || (n > 0) != (sign > 0)) continue;
                accumulate(out, n, excised_power(n, comp.degree) * c);
            }
        }
    }
    for (const auto& [n, col] : a.kernel.columns()) {
        auto it = col.find(m);
        if (it != col.end()) accumulate(out, n, it->second);
    }
    return out;
}

ClassicalSymbol compose(const ClassicalSymbol& a, const ClassicalSymbol& b, const CalculusOptions& opt) {
    if (a.cols != b.rows) {
        std::ostringstream os;
        os << "composition dimension mismatch: " << a.rows << "x" << a.cols << " # " << b.rows << "x"
           << b.cols;
        throw InputError(os.str());
    }
    const int depth = std::min({a.depth, b.depth, opt.depth});
    ClassicalSymbol out = ClassicalSymbol::zero(a.order + b.order, depth, a.rows, b.cols);

    // D_θ^α b_k, computed once per (k, α).
    std::vector<std::vector<HomComponent>> db(b.comps.size());
    for (std::size_t k = 0; k < b.comps.size() && static_cast<int>(k) < depth; ++k) {
        for (int alpha = 0; static_cast<int>(k) + alpha < depth; ++alpha) {
            db[k].push_back({b.comps[k].degree, b.comps[k].plus.derivative(alpha),
                             b.comps[k].minus.derivative(alpha)});
        }
    }
    for (int j = 0; j < std::min<int>(depth, a.comps.size()); ++j) {
        const auto& aj = a.comps[j];
        if (aj.is_zero()) continue;
        for (int k = 0; j + k < std::min<int>(depth, b.comps.size()); ++k) {
            for (int alpha = 0; j + k + alpha < depth; ++alpha) {
                const long long c = binomial(aj.degree, alpha);
                if (c == 0) break;
                const auto& dbk = db[k][alpha];
                if (dbk.is_zero()) continue;
                auto& target = out.comps[j + k + alpha];
                const double cp = static_cast<double>(c);
                const double cm = (alpha % 2 == 0) ? cp : -cp;
                if (!aj.plus.is_zero() && !dbk.plus.is_zero()) target.plus += cp * (aj.plus * dbk.plus);
                if (!aj.minus.is_zero() && !dbk.minus.is_zero()) target.minus += cm * (aj.minus * dbk.minus);
            }
        }
    }
    return out;
}

ClassicalSymbol adjoint(const ClassicalSymbol& a, const CalculusOptions& opt) {
    const int depth = std::min(a.depth, opt.depth);
    ClassicalSymbol out = ClassicalSymbol::zero(a.order, depth, a.cols, a.rows);
    for (int j = 0; j < std::min<int>(depth, a.comps.size()); ++j) {
        const auto& aj = a.comps[j];
        if (aj.is_zero()) continue;
        const TrigPoly ph = aj.plus.adjoint();
        const TrigPoly mh = aj.minus.adjoint();
        for (int alpha = 0; j + alpha < depth; ++alpha) {
            const long long c = binomial(aj.degree, alpha);
            if (c == 0) break;
            const double cp = static_cast<double>(c);
            const double cm = (alpha % 2 == 0) ? cp : -cp;
            auto& target = out.comps[j + alpha];
            target.plus += cp * ph.derivative(alpha);
            target.minus += cm * mh.derivative(alpha);
        }
    }
    return out;
}

ClassicalSymbol add(const ClassicalSymbol& a, const ClassicalSymbol& b, double sign) {
    if (a.rows != b.rows || a.cols != b.cols) {
        std::ostringstream os;
        os << "sum dimension mismatch: " << a.rows << "x" << a.cols << " + " << b.rows << "x" << b.cols;
        throw InputError(os.str());
    }
    const int order = std::max(a.order, b.order);
    const int depth = std::min(a.depth, b.depth);
    ClassicalSymbol out = ClassicalSymbol::zero(order, depth, a.rows, a.cols);
    auto merge = [&](const ClassicalSymbol& s, double f) {
        for (const auto& c : s.comps) {
            const int level = order - c.degree;
            if (level < 0 || level >= depth) continue;
            out.comps[level].plus += f * c.plus;
            out.comps[level].minus += f * c.minus;
        }
    };
    merge(a, 1.0);
    merge(b, sign);
    return out;
}

ClassicalSymbol scale(const ClassicalSymbol& a, cplx s) {
    ClassicalSymbol out = a;
    for (auto& c : out.comps) {
        c.plus *= s;
        c.minus *= s;
    }
    return out;
}

std::optional<int> leading_level(const ClassicalSymbol& a, double tol) {
    for (std::size_t j = 0; j < a.comps.size(); ++j) {
        if (a.comps[j].max_abs() > tol) return static_cast<int>(j);
    }
    return std::nullopt;
}

namespace {

void cap_bandwidth(ClassicalSymbol& s, int cap, double& discarded) {
    for (auto& c : s.comps) {
        c.plus = c.plus.truncated(cap, discarded);
        c.minus = c.minus.truncated(cap, discarded);
    }
}

/// Stores exact_n - symbol_column_n for every n in [-L, L] as kernel corrections.
template <class ExactColumn>
SmoothingKernel low_mode_corrections(const ClassicalSymbol& sym, int extent, ExactColumn&& exact) {
    Operator symbol_only{sym, SmoothingKernel(sym.rows, sym.cols), 0.0, std::nullopt};
    const std::size_t count = 2 * static_cast<std::size_t>(extent) + 1;
    std::vector<SmoothingKernel::Column> cols(count);
    parallel_for(count, [&](std::size_t i) {
        const int n = static_cast<int>(i) - extent;
        SmoothingKernel::Column col = exact(n);
        for (const auto& [m, b] : column(symbol_only, n)) accumulate(col, m, -b);
        SmoothingKernel::Column kept;
        for (auto& [m, b] : col) {
            if (block_max(b) > kKernelPrune) kept.emplace(m, std::move(b));
        }
        cols[i] = std::move(kept);
    });
    SmoothingKernel k(sym.rows, sym.cols);
    for (std::size_t i = 0; i < count; ++i) {
        const int n = static_cast<int>(i) - extent;
        for (const auto& [m, b] : cols[i]) k.add(m, n, b);
    }
    return k;
}

std::optional<int> merge_resolution(const std::optional<int>& a, const std::optional<int>& b) {
    if (!a) return b;
    if (!b) return a;
    return std::max(*a, *b);
}

}  // namespace

Operator compose(const Operator& a, const Operator& b, const CalculusOptions& opt) {
    Operator out;
    out.symbol = compose(a.symbol, b.symbol, opt);
    out.discarded_mass = a.discarded_mass + b.discarded_mass;
    if (opt.bandwidth_cap) cap_bandwidth(out.symbol, *opt.bandwidth_cap, out.discarded_mass);
    out.resolution = merge_resolution(a.resolution, b.resolution);

    const int kb = b.bandwidth();
    const int extent = std::max({kb, b.kernel.column_extent(), a.kernel.column_extent() + kb});
    out.kernel = low_mode_corrections(out.symbol, extent, [&](int n) {
        SmoothingKernel::Column result;
        for (const auto& [m, bm] : column(b, n)) {
            for (const auto& [r, am] : column(a, m)) accumulate(result, r, am * bm);
        }
        return result;
    });
    return out;
}

Operator adjoint(const Operator& a, const CalculusOptions& opt) {
    Operator out;
    out.symbol = adjoint(a.symbol, opt);
    out.discarded_mass = a.discarded_mass;
    out.resolution = a.resolution;
    const int extent = std::max(a.bandwidth(), a.kernel.row_extent());
    out.kernel = low_mode_corrections(out.symbol, extent, [&](int n) {
        SmoothingKernel::Column result;
        for (const auto& [m, block] : row(a, n)) result.emplace(m, block.adjoint());
        return result;
    });
    return out;
}

namespace {

SmoothingKernel combine(const SmoothingKernel& a, const SmoothingKernel& b, double sign) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("kernel dimension mismatch");
    SmoothingKernel out = a;
    for (const auto& [n, col] : b.columns()) {
        for (const auto& [m, blk] : col) out.add(m, n, sign * blk);
    }
    return out.pruned(0.0);
}

}  // namespace

Operator add(const Operator& a, const Operator& b) {
    return {add(a.symbol, b.symbol, 1.0), combine(a.kernel, b.kernel, 1.0),
            a.discarded_mass + b.discarded_mass, merge_resolution(a.resolution, b.resolution)};
}

Operator subtract(const Operator& a, const Operator& b) {
    return {add(a.symbol, b.symbol, -1.0), combine(a.kernel, b.kernel, -1.0),
            a.discarded_mass + b.discarded_mass, merge_resolution(a.resolution, b.resolution)};
}

Operator scale(const Operator& a, cplx s) {
    Operator out = a;
    out.symbol = scale(a.symbol, s);
    SmoothingKernel k(a.kernel.rows(), a.kernel.cols());
    for (const auto& [n, col] : a.kernel.columns()) {
        for (const auto& [m, blk] : col) k.add(m, n, s * blk);
    }
    out.kernel = k.pruned(0.0);
    return out;
}

}  // namespace toeplitz::circle
