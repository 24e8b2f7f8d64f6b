#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corpus.hpp"
#include "qtkit/errors.hpp"
#include "qtkit/io.hpp"
#include "qtkit/matrix.hpp"
#include "qtkit/presets.hpp"
#include "qtkit/qt.hpp"
#include "test_support.hpp"

using namespace qtkit;
using testsupport::Rng;

namespace {

Poly P(const char* text, const VarContext& ctx) { return parse_poly(text, ctx); }

const VarContext X5 = VarContext::xs(5);

} // namespace

TEST_CASE("jacobian of the first worked map") {
    const PolyMap a1 = *preset_map("a1");
    const PolyMatrix j = jacobian(a1);
    const char* expected[5][5] = {
        {"0", "0", "0", "2*x4", "0"},
        {"0", "0", "0", "x5", "x4"},
        {"x5", "-x4", "0", "-x2", "x1"},
        {"0", "0", "0", "0", "0"},
        {"0", "0", "0", "0", "0"},
    };
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t k = 0; k < 5; ++k)
            CHECK(j.at(i, k) == P(expected[i][k], X5));
}

TEST_CASE("jacobian of identity and zero maps") {
    const PolyMatrix ji = jacobian(PolyMap::identity(4));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(ji.at(i, j) == (i == j ? Poly::one(VarContext::xs(4))
                                         : Poly::zero(VarContext::xs(4))));
    CHECK(jacobian(PolyMap::zero(3)).is_zero());
}

TEST_CASE("hessian examples") {
    const VarContext X2 = VarContext::xs(2);
    const PolyMatrix h1 = hessian(P("x1*x2", X2));
    CHECK(h1.at(0, 0).is_zero());
    CHECK(h1.at(0, 1) == Poly::one(X2));
    CHECK(h1.at(1, 0) == Poly::one(X2));
    CHECK(h1.at(1, 1).is_zero());

    const PolyMatrix h2 = hessian(P("x1^2 + x2^2", X2));
    CHECK(h2.at(0, 0) == P("2", X2));
    CHECK(h2.at(1, 1) == P("2", X2));
    CHECK(h2.at(0, 1).is_zero());

    const PolyMatrix h3 = hessian(P("x1*x4^2 + x2*x4*x5 + x3*x5^2", X5));
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j)
            CHECK(h3.at(i, j) == h3.at(j, i));
}

TEST_CASE("determinant examples") {
    CHECK(det(hessian(P("x1*x4^2 + x2*x4*x5 + x3*x5^2", X5))).is_zero());
    CHECK(det(hessian(P("x1^2 + x2^2 + x3^2 + x4^2 + x5^2", X5))) == P("32", X5));
    const VarContext X2 = VarContext::xs(2);
    CHECK(det(hessian(P("x1*x2", X2))) == P("-1", X2));

    PolyMatrix rect(2, 3, X2);
    CHECK_THROWS_AS(det(rect), precondition_error);
}

TEST_CASE("rank examples") {
    CHECK(rank_ff(jacobian(*preset_map("a1"))) == 3);
    CHECK(rank_ff(PolyMatrix(3, 3, X5)) == 0);
    CHECK(rank_ff(PolyMatrix::identity(4, X5)) == 4);
}

TEST_CASE("nilpotency examples") {
    CHECK(is_nilpotent(jacobian(*preset_map("a1"))));
    CHECK_FALSE(is_nilpotent(PolyMatrix::identity(3, X5)));

    PolyMatrix upper(3, 3, X5);
    upper.at(0, 1) = P("x1", X5);
    upper.at(0, 2) = P("x2 + 1", X5);
    upper.at(1, 2) = P("x3^2", X5);
    CHECK(is_nilpotent(upper));

    PolyMatrix rect(2, 3, X5);
    CHECK_THROWS_AS(is_nilpotent(rect), precondition_error);
}

TEST_CASE("determinant matches cofactor expansion on random matrices") {
    Rng rng(31337);
    const VarContext X3 = VarContext::xs(3);
    for (int it = 0; it < 15; ++it) {
        PolyMatrix m(3, 3, X3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                m.at(i, j) = testsupport::random_poly(rng, X3, 2, 1);
        CHECK(det(m) == testsupport::cofactor_det(m));
    }
}

TEST_CASE("rank equals the largest nonzero minor size") {
    Rng rng(8675309);
    const VarContext X2 = VarContext::xs(2);
    for (int it = 0; it < 12; ++it) {
        PolyMatrix m(4, 4, X2);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) {
                if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) continue;
                m.at(i, j) = testsupport::random_poly(rng, X2, 2, 1);
            }
        if (it % 3 == 0) // force dependent rows
            for (std::size_t j = 0; j < 4; ++j) m.at(3, j) = m.at(0, j) + m.at(1, j);
        CHECK(rank_ff(m) == testsupport::minor_rank(m));
    }
}

TEST_CASE("hessian is the jacobian of the gradient and is symmetric") {
    Rng rng(5551212);
    const VarContext X3 = VarContext::xs(3);
    for (int it = 0; it < 10; ++it) {
        const Poly h = testsupport::random_poly(rng, X3, 5, 3);
        std::vector<Poly> grad;
        for (std::size_t i = 0; i < 3; ++i) grad.push_back(h.derivative(i));
        const PolyMatrix hess = hessian(h);
        const PolyMatrix jg = jacobian(grad, X3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                CHECK(hess.at(i, j) == jg.at(i, j));
                CHECK(hess.at(i, j) == hess.at(j, i));
            }
    }
}

TEST_CASE("homogeneous corpus quasi-translations have nilpotent Jacobians") {
    for (const char* name : {"a1", "a2", "b"}) {
        const PolyMap H = *preset_map(name);
        CAPTURE(name);
        CHECK(is_nilpotent(jacobian(H)));
    }
    const PolyMap scaled = preset_map("a1")->scaled(P("x4", X5));
    CHECK(is_nilpotent(jacobian(scaled)));
    const PolyMap re = qt_homogenize(dehomogenize(*preset_map("b")), 5);
    CHECK(is_nilpotent(jacobian(re)));

    Rng rng(0x715); // linear conjugates stay homogeneous
    for (const char* name : {"a1", "b"}) {
        const auto T = testsupport::random_invertible_matrix(rng, 5, 2);
        CHECK(is_nilpotent(jacobian(qt_conjugate_linear(*preset_map(name), T))));
    }

    // every homogeneous member of the shared corpus
    const auto corpus = testsupport::build_corpus(0xA5A5, 3);
    int homogeneous_count = 0;
    for (const auto& H : corpus.quasi) {
        if (!H.is_homogeneous()) continue;
        CHECK(is_nilpotent(jacobian(H)));
        ++homogeneous_count;
    }
    CHECK(homogeneous_count >= 10);
}

TEST_CASE("preset Jacobian ranks agree with the exhaustive minor oracle") {
    for (const char* name : {"a1", "a2", "b"}) {
        CAPTURE(name);
        const PolyMatrix j = jacobian(*preset_map(name));
        CHECK(rank_ff(j) == 3);
        CHECK(testsupport::minor_rank(j) == 3);
    }
}

TEST_CASE("rank is invariant under linear conjugation") {
    Rng rng(0x7777);
    for (const char* name : {"a1", "b"}) {
        const PolyMap H = *preset_map(name);
        const std::size_t r = rank_ff(jacobian(H));
        for (int it = 0; it < 3; ++it) {
            const auto T = testsupport::random_invertible_matrix(rng, 5, 2);
            CHECK(rank_ff(jacobian(qt_conjugate_linear(H, T))) == r);
        }
    }
}

TEST_CASE("scalar matrix inverse round-trips") {
    Rng rng(0x1234);
    for (int it = 0; it < 10; ++it) {
        const auto T = testsupport::random_invertible_matrix(rng, 4, 2);
        const auto Tinv = T.inverse();
        REQUIRE(Tinv.has_value());
        CHECK(T * *Tinv == ScalarMatrix::identity(4));
        CHECK(*Tinv * T == ScalarMatrix::identity(4));
    }
    ScalarMatrix singular(3, 3);
    singular.at(0, 0) = Scalar(1);
    singular.at(1, 1) = Scalar(1);
    CHECK_FALSE(singular.inverse().has_value());
}
