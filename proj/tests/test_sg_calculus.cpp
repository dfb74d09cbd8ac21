#include <doctest.h>

#include <cmath>
#include <random>

#include "sg_helpers.hpp"
#include "toeplitz/sg/ellipticity.hpp"

using namespace toeplitz;
using namespace toeplitz::sg;
using testing::key;
using testing::random_sg;

namespace {

CalculusOptions opts(int depth) {
    CalculusOptions o;
    o.depth = depth;
    return o;
}

QMatrix q1(const CQ& v) {
    QMatrix m(1, 1);
    m(0, 0) = v;
    return m;
}

/// ⟨x⟩^r or x⟨x⟩^{r-1}, evaluated without the library.
double oracle_basis(double r, int parity, double x) {
    const double b = std::sqrt(1.0 + x * x);
    return parity == 0 ? std::pow(b, r) : x * std::pow(b, r - 1.0);
}

double expansion_value(const Expansion& e, double x) {
    double v = 0.0;
    for (const auto& [k, c] : e) v += c.get_d() * oracle_basis(k.degree.get_d(), k.parity, x);
    return v;
}

}  // namespace

TEST_CASE("rationals parse exactly") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-0.125") == Rational(-1, 8));
    CHECK(parse_rational("7") == Rational(7));
    CHECK(to_string(Rational(-6, 4)) == "-3/2");
    CHECK(rational_from_double(0.1).get_d() == 0.1);
    CHECK_THROWS_AS(parse_rational("abc"), InputError);
    CHECK_THROWS_AS(parse_rational("1/0"), InputError);
}

TEST_CASE("exact matrix inverse and rank") {
    QMatrix a(2, 2);
    a(0, 0) = CQ(1, 1);
    a(0, 1) = CQ(2);
    a(1, 0) = CQ(0, -1);
    a(1, 1) = CQ(3);
    CHECK(a * a.inverse() == QMatrix::identity(2));
    CHECK(a.rank() == 2);
    QMatrix s(2, 2);
    s(0, 0) = CQ(1);
    s(0, 1) = CQ(2);
    s(1, 0) = CQ(2);
    s(1, 1) = CQ(4);
    CHECK(s.rank() == 1);
    CHECK_THROWS_AS(s.inverse(), NotInvertible);
}

TEST_CASE("closure identities hold at random sample points") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> xs(-30.0, 30.0);
    const std::vector<BasisKey> keys{key(2, 0), key(1, 1), key(-1, 1), key(-2, 0), {Rational(1, 2), 1}, {Rational(-3, 2), 0}};
    for (const auto& a : keys) {
        for (const auto& b : keys) {
            const auto prod = basis_product(a, b);
            for (int i = 0; i < 100; ++i) {
                const double x = xs(rng);
                const double expect = oracle_basis(a.degree.get_d(), a.parity, x) * oracle_basis(b.degree.get_d(), b.parity, x);
                CHECK(std::abs(expansion_value(prod, x) - expect) <= 1e-12 * std::max(1.0, std::abs(expect)));
            }
        }
        const auto der = basis_derivative(a);
        for (int i = 0; i < 100; ++i) {
            const double x = xs(rng);
            const double h = 1e-5 * std::max(1.0, std::abs(x));
            // fourth-order central difference
            const auto f = [&](double t) { return oracle_basis(a.degree.get_d(), a.parity, t); };
            const double fd = (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
            CHECK(std::abs(expansion_value(der, x) - fd) <= 1e-7 * std::max(1.0, std::abs(fd)));
        }
    }
    CHECK(branch_value(key(1, 1), Rational(1), -1) == -1);
    CHECK(branch_value(key(1, 0), Rational(1), -1) == 1);
    CHECK(branch_value(key(0, 0), Rational(1), 1) == 0);
}

TEST_CASE("identity and Fourier multipliers compose trivially") {
    std::mt19937_64 rng(9);
    const auto a = random_sg(rng, 1, 1, 2, 4);
    CHECK(compose(SGAlgebra::identity(2, 4), a, opts(4)) == a);
    CHECK(compose(a, SGAlgebra::identity(2, 4), opts(4)) == a);

    auto p = SGSymbol::zero({2, 0}, 4, 1, 1);
    p.add_term(key(0, 0), key(2, 0), q1(CQ(1)));
    auto r = SGSymbol::zero({1, 0}, 4, 1, 1);
    r.add_term(key(0, 0), key(1, 1), q1(CQ(3)));
    const auto c = compose(p, r, opts(4));
    REQUIRE(c.terms.size() == 1);
    CHECK(c.terms.begin()->first.xi == BasisKey{Rational(3), 1});
    CHECK(c.terms.begin()->second == q1(CQ(3)));
}

TEST_CASE("xi composed with x is x xi - i") {
    auto xi = SGSymbol::zero({1, 0}, 4, 1, 1);
    xi.add_term(key(0, 0), key(1, 1), q1(CQ(1)));
    auto x = SGSymbol::zero({0, 1}, 4, 1, 1);
    x.add_term(key(1, 1), key(0, 0), q1(CQ(1)));
    const auto c = compose(xi, x, opts(4));
    auto expect = SGSymbol::zero({1, 1}, 4, 1, 1);
    expect.add_term(key(1, 1), key(1, 1), q1(CQ(1)));
    expect.add_term(key(0, 0), key(0, 0), q1(CQ(0, -1)));
    CHECK(c == expect);
    // x # xi has no correction
    auto plain = SGSymbol::zero({1, 1}, 4, 1, 1);
    plain.add_term(key(1, 1), key(1, 1), q1(CQ(1)));
    CHECK(compose(x, xi, opts(4)) == plain);
    // adjoint of x xi: conj + (-i) ∂_ξ D_x = x xi - i
    CHECK(adjoint(plain, opts(4)) == expect);
}

TEST_CASE("three symbols of weights and of x xi") {
    const auto w = SGSymbol::weight(1, 1, 1, 4);
    const auto s = three_symbols(w);
    for (int i = 0; i < 2; ++i) {
        CHECK(s.xi_principal[i].terms().size() == 1);
        CHECK(s.xi_principal[i].terms().begin()->first == key(1, 0));
        CHECK(s.x_principal[i].terms().begin()->first == key(1, 0));
        for (int j = 0; j < 2; ++j) CHECK(s.corners[i][j] == q1(CQ(1)));
    }
    auto xx = SGSymbol::zero({1, 1}, 4, 1, 1);
    xx.add_term(key(1, 1), key(1, 1), q1(CQ(1)));
    const auto t = three_symbols(xx);
    CHECK(t.corners[0][0] == q1(CQ(1)));
    CHECK(t.corners[0][1] == q1(CQ(-1)));
    CHECK(t.corners[1][0] == q1(CQ(-1)));
    CHECK(t.corners[1][1] == q1(CQ(1)));

    auto shifted = w;
    shifted.add_term(key(0, 0), key(0, 0), q1(CQ(5)));
    const auto u = three_symbols(shifted);
    for (int i = 0; i < 2; ++i) {
        CHECK(u.xi_principal[i] == s.xi_principal[i]);
        CHECK(u.x_principal[i] == s.x_principal[i]);
        for (int j = 0; j < 2; ++j) CHECK(u.corners[i][j] == s.corners[i][j]);
    }
}

TEST_CASE("three symbols are multiplicative and corner-consistent") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = random_sg(rng, 1, 1, 2, 4);
        const auto b = random_sg(rng, 0, 1, 2, 4);
        const auto c = compose(a, b, opts(4));
        const auto sa = three_symbols(a);
        const auto sb = three_symbols(b);
        const auto sc = three_symbols(c);
        for (int i = 0; i < 2; ++i) {
            CHECK(sc.xi_principal[i] == sa.xi_principal[i] * sb.xi_principal[i]);
            CHECK(sc.x_principal[i] == sa.x_principal[i] * sb.x_principal[i]);
            for (int j = 0; j < 2; ++j) CHECK(sc.corners[i][j] == sa.corners[i][j] * sb.corners[i][j]);
        }
        for (const auto* sym : {&sa, &sb, &sc}) {
            const Rational m = sym == &sa ? Rational(a.order.m) : sym == &sb ? Rational(b.order.m) : Rational(c.order.m);
            const Rational mu = sym == &sa ? Rational(a.order.mu) : sym == &sb ? Rational(b.order.mu) : Rational(c.order.mu);
            for (int sx = 0; sx < 2; ++sx) {
                for (int sxi = 0; sxi < 2; ++sxi) {
                    CHECK(sym->xi_principal[sxi].branch(m, sx == 0 ? 1 : -1) == sym->corners[sx][sxi]);
                    CHECK(sym->x_principal[sx].branch(mu, sxi == 0 ? 1 : -1) == sym->corners[sx][sxi]);
                }
            }
        }
    }
}

TEST_CASE("associativity and adjoint involution modulo depth") {
    std::mt19937_64 rng(33);
    const auto o = opts(4);
    for (int trial = 0; trial < 3; ++trial) {
        const auto a = random_sg(rng, 1, 0, 1, 4);
        const auto b = random_sg(rng, 0, 1, 1, 4);
        const auto c = random_sg(rng, -1, 1, 1, 4);
        const auto l = compose(compose(a, b, o), c, o);
        const auto r = compose(a, compose(b, c, o), o);
        CHECK_FALSE(leading_level(add(l, r, CQ(-1))).has_value());
        CHECK_FALSE(leading_level(add(adjoint(adjoint(a, o), o), a, CQ(-1))).has_value());
        const auto ab_star = adjoint(compose(a, b, o), o);
        const auto b_star_a_star = compose(adjoint(b, o), adjoint(a, o), o);
        CHECK_FALSE(leading_level(add(ab_star, b_star_a_star, CQ(-1))).has_value());
    }
}

TEST_CASE("parametrix of <x><xi>") {
    const int J = 5;
    const auto o = opts(J);
    const auto a = SGSymbol::weight(1, 1, 1, J);
    const auto full = sg_full_projection(1, J);
    const Element t = core::toeplitz_compress<SGAlgebra>(a, full, full, o);
    const auto cert = check_ellipticity(t, 33, 33, 1e6);
    CHECK(cert.elliptic);
    CHECK(cert.min_singular == doctest::Approx(1.0));

    const auto p = sg_parametrix(t, o);
    CHECK(p.diagnostics.left_candidate_level == 1);
    CHECK_FALSE(p.diagnostics.left_residual_level.has_value());
    CHECK_FALSE(p.diagnostics.right_residual_level.has_value());
    const auto lead = p.b.op.terms.find(TermKey{key(-1, 0), key(-1, 0)});
    REQUIRE(lead != p.b.op.terms.end());
    CHECK(lead->second == q1(CQ(1)));

    // first residual 1 - B0#A: the single α = 1 term is -i b_{-1,1}(x) b_{-1,1}(ξ)
    const auto b0 = SGSymbol::weight(-1, -1, 1, J);
    const auto r0 = add(SGAlgebra::identity(1, J), compose(b0, a, o), CQ(-1));
    CHECK(leading_level(r0) == 1);
    std::size_t level_one = 0;
    for (const auto& [k, c] : r0.terms) {
        if (r0.level(k) != 1) continue;
        ++level_one;
        CHECK(k == TermKey{key(-1, 1), key(-1, 1)});
        CHECK(c == q1(CQ(0, -1)));
    }
    CHECK(level_one == 1);
}

TEST_CASE("multiplication by x is not elliptic") {
    auto x = SGSymbol::zero({0, 1}, 4, 1, 1);
    x.add_term(key(1, 1), key(0, 0), q1(CQ(1)));
    const auto full = sg_full_projection(1, 4);
    const Element t = core::toeplitz_compress<SGAlgebra>(x, full, full, opts(4));
    const auto cert = check_ellipticity(t, 33, 33, 1e6);
    CHECK_FALSE(cert.elliptic);
    CHECK(cert.witness.rfind("x=0", 0) == 0);
}

TEST_CASE("restriction discards a zero block") {
    const int J = 4;
    const auto o = opts(J);
    auto a = SGSymbol::zero({1, 1}, J, 2, 2);
    QMatrix e00(2, 2);
    e00(0, 0) = CQ(1);
    a.add_term(key(1, 0), key(1, 0), e00);
    const auto p = sg_constant_projection(e00, J);
    const Element t = core::toeplitz_compress<SGAlgebra>(a, p, p, o);
    CHECK(check_ellipticity(t, 33, 33, 1e6).elliptic);
    const auto par = sg_parametrix(t, o);
    CHECK_FALSE(par.diagnostics.left_residual_level.has_value());
    const Element bare = core::toeplitz_compress<SGAlgebra>(a, sg_full_projection(2, J), sg_full_projection(2, J), o);
    CHECK_FALSE(check_ellipticity(bare, 33, 33, 1e6).elliptic);

    QMatrix bad(2, 2);
    bad(0, 1) = CQ(1);
    CHECK_THROWS_AS(sg_constant_projection(bad, J), InputError);
}

TEST_CASE("non-monomial leading parts need a candidate") {
    const int J = 4;
    const auto o = opts(J);
    auto a = SGSymbol::weight(1, 0, 1, J);
    a.add_term(key(0, 0), key(1, 1), q1(CQ(0, 1)));  // ⟨ξ⟩ + iξ
    const auto full = sg_full_projection(1, J);
    const Element t = core::toeplitz_compress<SGAlgebra>(a, full, full, o);
    CHECK_THROWS_AS(sg_parametrix(t, o), InputError);
}

TEST_CASE("SG order reductions") {
    const auto o = opts(5);
    const auto r0 = sg_order_reduction(0, 0, 1, o);
    CHECK(r0.forward == SGAlgebra::identity(1, 5));
    CHECK(r0.inverse == SGAlgebra::identity(1, 5));

    const auto r1 = sg_order_reduction(1, 1, 2, o);
    CHECK(r1.level_before == 1);
    CHECK_FALSE(r1.level_after.has_value());

    const auto r2 = sg_order_reduction(2, 0, 1, o);
    CHECK_FALSE(r2.level_before.has_value());
    CHECK(r2.inverse == SGSymbol::weight(-2, 0, 1, 5));
}

TEST_CASE("perturbed constant projections keep the verdict") {
    const int J = 4;
    const auto o = opts(J);
    QMatrix e00(2, 2);
    e00(0, 0) = CQ(1);
    const auto p = sg_constant_projection(e00, J);
    // perturbation of bi-order (-1, -1) in the off-diagonal corner, completed by Newton–Schulz
    auto start = SGSymbol::constant(e00, J);
    QMatrix off(2, 2);
    off(1, 0) = CQ(Rational(1, 4));
    start.add_term(key(-1, 0), key(-1, 1), off);
    const auto q = core::complete_projection<SGAlgebra>(start, o);
    auto a = SGSymbol::weight(1, 1, 2, J);
    for (const auto* proj : {&p, &q}) {
        const Element t = core::toeplitz_compress<SGAlgebra>(a, *proj, *proj, o);
        CHECK(check_ellipticity(t, 33, 33, 1e6).elliptic);
    }
}
