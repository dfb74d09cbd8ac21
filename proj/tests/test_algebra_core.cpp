#include <doctest.h>

#include "helpers.hpp"

using namespace testing;
using namespace toeplitz::circle;
namespace lab = toeplitz::lab;
using Alg = CircleAlgebra;

namespace {

CalculusOptions opts(int depth) {
    CalculusOptions o;
    o.depth = depth;
    return o;
}

bool vanishes(const Operator& x, const CalculusOptions& o) { return !Alg::leading_level(x, o).has_value(); }

Operator d_plus_one(int depth) { return add(derivative(1, depth), identity(1, depth)); }

Operator inverse_xi(int depth) {
    auto s = ClassicalSymbol::zero(-1, depth, 1, 1);
    s.comps[0].plus = TrigPoly::identity(1);
    s.comps[0].minus = -1.0 * TrigPoly::identity(1);
    return {s, SmoothingKernel(1, 1), 0.0, std::nullopt};
}

}  // namespace

TEST_CASE("compression by Hardy and full projections") {
    const auto o = opts(5);
    const auto h = certified(hardy(1, 5), o);
    const auto e = core::toeplitz_compress<Alg>(identity(1, 5), h, h, o);
    CHECK(vanishes(subtract(e.op, h.op), o));
    CHECK(lab::galerkin(subtract(e.op, h.op), 8).data.norm() == 0.0);

    std::mt19937_64 rng(1);
    const auto a = random_symbol(rng, 1, 5, 2, 2, 2, true);
    const auto full = full_projection(2, 5);
    const auto ea = core::toeplitz_compress<Alg>(a, full, full, o);
    CHECK(ea.op.symbol == a.symbol);

    const auto again = core::toeplitz_compress<Alg>(ea.op, full, full, o);
    CHECK(vanishes(subtract(again.op, ea.op), o));
    const auto [l, r] = core::element_defects<Alg>(ea, o);
    CHECK_FALSE(l.has_value());
    CHECK_FALSE(r.has_value());

    CHECK_THROWS_AS(core::toeplitz_compress<Alg>(a, h, h, o), toeplitz::InputError);
}

TEST_CASE("compressed shift is the unit subdiagonal on nonnegative modes") {
    const auto o = opts(5);
    const auto h = certified(hardy(1, 5), o);
    const auto t = core::toeplitz_compress<Alg>(multiplication(exp_mode(1), 5), h, h, o);
    const int M = 32;
    const auto g = lab::galerkin(t.op, M);
    // oracle: dense matrices of P and M_e built entry by entry
    CMatrix pd = CMatrix::Zero(2 * M + 1, 2 * M + 1);
    CMatrix sd = CMatrix::Zero(2 * M + 1, 2 * M + 1);
    for (int n = -M; n <= M; ++n) {
        if (n >= 0) pd(n + M, n + M) = 1.0;
        if (n + 1 <= M) sd(n + 1 + M, n + M) = 1.0;
    }
    CHECK((g.data - pd * sd * pd).norm() < 1e-14);
    for (int n = 0; n < M; ++n) CHECK(g.data(g.row_index(n + 1), g.col_index(n)) == cplx(1.0));
}

TEST_CASE("completing a compressed identity is trivial") {
    const auto o = opts(5);
    const auto h = certified(hardy(1, 5), o);
    const auto e = core::toeplitz_compress<Alg>(identity(1, 5), h, h, o);
    const auto p = core::parametrix_bootstrap<Alg>(e, h.op, h.op, core::CandidateKind::Toeplitz, o);
    CHECK(vanishes(p.left_residual, o));
    CHECK(lab::galerkin(p.left_residual, 8).data.norm() == 0.0);
    CHECK(vanishes(subtract(p.b.op, h.op), o));
}

TEST_CASE("parametrix of D + 1 is the geometric series of 1/(xi + 1)") {
    const int J = 5;
    const auto o = opts(J);
    const auto full = full_projection(1, J);
    const auto e = core::toeplitz_compress<Alg>(d_plus_one(J), full, full, o);
    const auto p = core::parametrix_bootstrap<Alg>(e, inverse_xi(J), inverse_xi(J), core::CandidateKind::FullAlgebra, o);
    const auto& comps = p.b.op.symbol.comps;
    REQUIRE(comps.size() == std::size_t(J));
    for (int k = 0; k < J; ++k) {
        CHECK(comps[k].degree == -1 - k);
        CHECK(comps[k].plus == (k % 2 == 0 ? 1.0 : -1.0) * TrigPoly::identity(1));
        CHECK(comps[k].minus == -1.0 * TrigPoly::identity(1));
    }
    CHECK(p.diagnostics.left_candidate_level == 1);

    // Fourier-diagonal oracle: Gal(B) is diagonal with entries close to 1/(n+1) for large |n|
    const int M = 64;
    const auto g = lab::galerkin(p.b.op, M);
    for (int n : {20, 40, 64, -20, -40, -64}) {
        const double exact = 1.0 / (n + 1.0);
        CHECK(std::abs(g.data(g.row_index(n), g.col_index(n)) - exact) <= 2.0 * std::pow(std::abs(n) - 1.0, -1 - J));
    }

    const auto sym = symbol_parametrix(e, o);
    CHECK(vanishes(subtract(sym.b.op, p.b.op), o));
}

TEST_CASE("order-0 candidate with non-elliptic residual is refused") {
    const auto o = opts(4);
    const auto h = certified(hardy(1, 4), o);
    const auto e = core::toeplitz_compress<Alg>(multiplication(exp_mode(1), 4), h, h, o);
    CHECK_THROWS_AS(core::parametrix_bootstrap<Alg>(e, h.op, h.op, core::CandidateKind::Toeplitz, o),
                    toeplitz::NotElliptic);
    CHECK_THROWS_AS(core::parametrix_bootstrap<Alg>(e, inverse_xi(4), inverse_xi(4), core::CandidateKind::Toeplitz, o),
                    toeplitz::InputError);
}

TEST_CASE("Toeplitz operator of 2 + e^{i theta} bootstraps from the pointwise inverse") {
    const auto o = opts(5);
    const auto h = certified(hardy(1, 5), o);
    const TrigPoly f = TrigPoly::constant(scalar(2.0)) + exp_mode(1);
    const auto t = core::toeplitz_compress<Alg>(multiplication(f, 5), h, h, o);
    const auto cand = core::toeplitz_compress<Alg>(multiplication(inverse(f), 5), h, h, o).op;
    const auto p = core::parametrix_bootstrap<Alg>(t, cand, cand, core::CandidateKind::Toeplitz, o);
    CHECK(p.diagnostics.left_candidate_level.value_or(99) >= 1);
    CHECK_FALSE(p.diagnostics.left_residual_level.has_value());
    CHECK_FALSE(p.diagnostics.right_residual_level.has_value());
}

TEST_CASE("witness route") {
    const auto o = opts(5);
    const auto solver = ambient_solver(o, 64, 1e6);
    const auto h = certified(hardy(1, 5), o);

    const auto ep = core::toeplitz_compress<Alg>(identity(1, 5), h, h, o);
    const auto pp = core::fredholm_parametrix<Alg>(ep, solver, o);
    CHECK(vanishes(subtract(pp.b.op, h.op), o));

    const auto shift = core::toeplitz_compress<Alg>(multiplication(exp_mode(1), 5), h, h, o);
    const auto ps = core::fredholm_parametrix<Alg>(shift, solver, o);
    CHECK_FALSE(ps.diagnostics.left_residual_level.has_value());
    CHECK_FALSE(ps.diagnostics.right_residual_level.has_value());
    const auto bs = symbol_parametrix(shift, o);
    CHECK(vanishes(subtract(ps.b.op, bs.b.op), o));

    TrigPoly sin_t(1, 1);
    sin_t.add_coefficient(1, scalar(cplx(0, -0.5)));
    sin_t.add_coefficient(-1, scalar(cplx(0, 0.5)));
    const auto ts = core::toeplitz_compress<Alg>(multiplication(sin_t, 5), h, h, o);
    try {
        core::fredholm_parametrix<Alg>(ts, solver, o);
        FAIL("expected NotElliptic");
    } catch (const toeplitz::NotElliptic& e) {
        CHECK(std::string(e.what()) == "not elliptic (restricted symbol not bijective)");
        CHECK(e.witness() == "theta=0, branch=+");
    }
}

TEST_CASE("pointwise candidates are accepted for random elliptic instances") {
    const auto o = opts(5);
    std::mt19937_64 rng(41);
    const auto h = certified(hardy(2, 5), o);
    int accepted = 0;
    for (int trial = 0; trial < 6; ++trial) {
        // identity plus a small loop keeps the symbol invertible
        TrigPoly f = TrigPoly::identity(2) + 0.125 * random_integer_trig(rng, 2, 2, 1);
        auto a = multiplication(f, 5);
        auto low = ClassicalSymbol::zero(0, 5, 2, 2);
        low.comps[2].plus = 0.25 * random_integer_trig(rng, 2, 2, 1);
        a = add(a, Operator{low, SmoothingKernel(2, 2), 0.0, std::nullopt});
        const auto t = core::toeplitz_compress<Alg>(a, h, h, o);
        if (!check_ellipticity(t, 64, 1e6).elliptic) continue;
        const auto p = symbol_parametrix(t, o);
        CHECK_FALSE(p.diagnostics.left_residual_level.has_value());
        const auto q = core::fredholm_parametrix<Alg>(t, ambient_solver(o, 64, 1e6), o);
        CHECK(vanishes(subtract(p.b.op, q.b.op), o));
        ++accepted;
    }
    CHECK(accepted >= 4);
}

TEST_CASE("order reduction with the homogeneous family") {
    const auto o = opts(5);
    const auto fam = homogeneous_family(5);
    const auto full = full_projection(1, 5);

    const auto e0 = core::toeplitz_compress<Alg>(identity(1, 5), full, full, o);
    const auto r0 = core::reduce_order<Alg>(e0, 0, 0, fam, o);
    CHECK(vanishes(subtract(r0.element.op, e0.op), o));

    const auto e = core::toeplitz_compress<Alg>(d_plus_one(5), full, full, o);
    const auto r = core::reduce_order<Alg>(e, 1, 1, fam, o);
    CHECK(r.element.op.order() == 0);
    const int M = 64;
    const CMatrix lhs = lab::galerkin(r.element.op, M).data;
    const CMatrix rhs = lab::galerkin(fam(0, 1), M).data * lab::galerkin(e.op, M).data * lab::galerkin(fam(-1, 1), M).data;
    CHECK((lhs - rhs).norm() <= 1e-8);

    const auto h = certified(hardy(1, 5), o);
    const auto eh = core::toeplitz_compress<Alg>(d_plus_one(5), h, h, o);
    const auto rh = core::reduce_order<Alg>(eh, 1, 1, bracket_family(5), o);
    const auto defect = subtract(compose(rh.element.p0.op, rh.element.p0.op, o), rh.element.p0.op);
    CHECK(vanishes(defect, o));
}

TEST_CASE("projection perturbation keeps the ellipticity verdict") {
    const auto o = opts(5);
    std::mt19937_64 rng(43);
    const auto h = certified(hardy(1, 5), o);
    auto noise = ClassicalSymbol::zero(0, 5, 1, 1);
    noise.comps[1].plus = 0.0625 * random_integer_trig(rng, 1, 1, 1);
    noise.comps[1].minus = 0.0625 * random_integer_trig(rng, 1, 1, 1);
    const auto q = core::complete_projection<Alg>(add(hardy(1, 5), Operator{noise, SmoothingKernel(1, 1), 0.0, std::nullopt}), o);
    for (const TrigPoly& f : {exp_mode(1), TrigPoly::constant(scalar(2.0)) + exp_mode(-1)}) {
        const auto a = multiplication(f, 5);
        const bool vp = check_ellipticity(core::toeplitz_compress<Alg>(a, h, h, o), 64, 1e6).elliptic;
        const bool vq = check_ellipticity(core::toeplitz_compress<Alg>(a, q, q, o), 64, 1e6).elliptic;
        CHECK(vp == vq);
    }
}

TEST_CASE("describe_level formats residual orders") {
    const auto o = opts(4);
    const auto d = derivative(1, 4);
    CHECK(core::describe_level<Alg>(d, o) == "1");
    CHECK(core::describe_level<Alg>(subtract(d, d), o) == "<= -3");
}
