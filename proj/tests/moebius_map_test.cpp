#include <gtest/gtest.h>

#include "moebius/moebius_map.hpp"
#include "moebius/sampling.hpp"

using namespace moebius;

namespace {

const cplx I{0.0, 1.0};

void expect_mat_near(const Mat2& x, const Mat2& y, double tol) {
    EXPECT_LE(max_entry_distance(x, y), tol) << "m11=" << x.m11 << " m12=" << x.m12 << " m21=" << x.m21
                                             << " m22=" << x.m22;
}

}  // namespace

TEST(MoebiusMapTest, RejectsSingularCoefficients) {
    EXPECT_THROW(MoebiusMap(1.0, 2.0, 2.0, 4.0), InvalidMapError);
    EXPECT_THROW(MoebiusMap(0.0, 0.0, 0.0, 0.0), InvalidMapError);
    // Relative gate: a tiny but well-conditioned map is fine.
    EXPECT_NO_THROW(MoebiusMap(1e-200, 0.0, 0.0, 1e-200));
    EXPECT_THROW(MoebiusMap(1e6, 1e6, 1e6, 1e6 + 1e-7), InvalidMapError);
    EXPECT_THROW(MoebiusMap(cplx{std::nan(""), 0.0}, 0.0, 0.0, 1.0), InvalidMapError);
}

TEST(Normalize, WorkedExamples) {
    expect_mat_near(normalize(MoebiusMap(1.0, 0.0, 0.0, 1.0)).matrix(), Mat2::identity(), 1e-15);

    const UnimodularMatrix two = normalize(MoebiusMap::scaling(2.0));
    expect_mat_near(two.matrix(), Mat2{1.4142135623730951, 0.0, 0.0, 0.7071067811865476}, 1e-15);
    EXPECT_NEAR(std::abs(two.det() - 1.0), 0.0, 1e-12);

    // 1/z: ad - bc = -1, sqrt(-1) = i gives [[0, -i], [-i, 0]]; the sign rule flips it.
    const UnimodularMatrix inv = normalize(MoebiusMap(0.0, 1.0, 1.0, 0.0));
    expect_mat_near(inv.matrix(), Mat2{0.0, I, I, 0.0}, 1e-15);
    EXPECT_TRUE(inv.flipped());
    EXPECT_NEAR(std::abs(inv.trace()), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(inv.det() - 1.0), 0.0, 1e-12);
}

TEST(Normalize, SignRuleMakesClassesComparable) {
    const Mat2 m{-2.0, 1.0, 1.0, -1.0};  // det 1
    const auto a = UnimodularMatrix::canonical(m);
    const auto b = UnimodularMatrix::canonical(-m);
    expect_mat_near(a.matrix(), b.matrix(), 0.0);
    EXPECT_TRUE(a.flipped());
    EXPECT_FALSE(b.flipped());
    // Leading zero entries are skipped; purely imaginary entries need Im > 0.
    expect_mat_near(UnimodularMatrix::canonical(Mat2{0.0, -I, -I, 0.0}).matrix(), Mat2{0.0, I, I, 0.0}, 0.0);
}

TEST(Normalize, ProjectiveScalingInvariance) {
    MapSampler s(21);
    for (int i = 0; i < 500; ++i) {
        const MoebiusMap f = s.generic();
        cplx k = s.complex_in_box(10.0);
        while (std::abs(k) < 1e-3) k = s.complex_in_box(10.0);
        const MoebiusMap g(k * f.a(), k * f.b(), k * f.c(), k * f.d());
        EXPECT_TRUE(normalize(f).approx_equal(normalize(g), 1e-12));
        EXPECT_TRUE(same_map(f, g));
    }
}

TEST(Apply, WorkedExamples) {
    EXPECT_EQ(apply(MoebiusMap::identity(), cplx{5.0, 1.0}), ExtendedComplex(5.0, 1.0));
    const MoebiusMap f(2.0, 1.0, 1.0, 1.0);
    EXPECT_EQ(apply(f, ExtendedComplex::infinity()), ExtendedComplex(2.0));
    EXPECT_EQ(apply(f, -1.0), ExtendedComplex::infinity());
    EXPECT_EQ(apply(MoebiusMap(0.0, 1.0, 1.0, 0.0), 0.0), ExtendedComplex::infinity());
    EXPECT_EQ(apply(MoebiusMap::scaling(2.0), ExtendedComplex::infinity()), ExtendedComplex::infinity());
    EXPECT_LE(chordal_distance(apply(MoebiusMap(0.0, 1.0, 1.0, 0.0), cplx{1e300, 0.0}), 0.0), 1e-290);
}

TEST(Compose, WorkedExamples) {
    const MoebiusMap f(2.0, 1.0, 1.0, 1.0);
    EXPECT_TRUE(is_identity(compose(f, inverse(f))));
    EXPECT_TRUE(same_map(compose(MoebiusMap::scaling(2.0), MoebiusMap::translation(1.0)), MoebiusMap(2.0, 2.0, 0.0, 1.0)));
    const MoebiusMap recip(0.0, 1.0, 1.0, 0.0);
    EXPECT_TRUE(is_identity(compose(recip, recip)));
}

TEST(Inverse, WorkedExamples) {
    EXPECT_TRUE(is_identity(inverse(MoebiusMap::identity())));
    EXPECT_TRUE(same_map(inverse(MoebiusMap::scaling(2.0)), MoebiusMap(1.0, 0.0, 0.0, 2.0)));
    const MoebiusMap f(2.0, 1.0, 1.0, 1.0);
    EXPECT_TRUE(same_map(inverse(f), MoebiusMap(1.0, -1.0, -1.0, 2.0)));
    EXPECT_TRUE(is_identity(compose(inverse(f), f)));
}

TEST(GroupLaws, PointwiseHomomorphism) {
    MapSampler s(5);
    for (int i = 0; i < 500; ++i) {
        const MoebiusMap f = s.generic(), g = s.generic();
        const MoebiusMap fg = compose(f, g);
        for (int k = 0; k < 20; ++k) {
            const ExtendedComplex z = (k == 0) ? ExtendedComplex::infinity() : s.point();
            EXPECT_LE(chordal_distance(apply(fg, z), apply(f, apply(g, z))), 1e-9);
        }
    }
}

TEST(GroupLaws, MatrixHomomorphismUpToSign) {
    MapSampler s(6);
    for (int i = 0; i < 1000; ++i) {
        const MoebiusMap f = s.generic(), g = s.generic();
        const auto product = UnimodularMatrix::canonical(normalize(f).matrix() * normalize(g).matrix());
        expect_mat_near(product.matrix(), normalize(compose(f, g)).matrix(), 1e-9);
    }
}

TEST(GroupLaws, InverseUndoesMapIncludingPoleAndInfinity) {
    MapSampler s(8);
    for (int i = 0; i < 500; ++i) {
        const MoebiusMap f = s.generic();
        const MoebiusMap finv = inverse(f);
        std::vector<ExtendedComplex> pts{ExtendedComplex::infinity(), -f.d() / f.c()};
        for (int k = 0; k < 18; ++k) pts.push_back(s.point());
        for (const auto& z : pts) EXPECT_LE(chordal_distance(apply(finv, apply(f, z)), z), 1e-9);
    }
}

TEST(FromThreePoints, WorkedExamples) {
    const auto inf = ExtendedComplex::infinity();
    EXPECT_TRUE(is_identity(from_three_points(0.0, 1.0, inf, 0.0, 1.0, inf)));
    EXPECT_TRUE(same_map(from_three_points(0.0, 1.0, inf, inf, 1.0, 0.0), MoebiusMap(0.0, 1.0, 1.0, 0.0)));
    EXPECT_TRUE(same_map(from_three_points(0.0, 1.0, inf, 1.0, 2.0, inf), MoebiusMap::translation(1.0)));
}

TEST(FromThreePoints, SendsPointsToTargets) {
    MapSampler s(9);
    for (int i = 0; i < 500; ++i) {
        std::array<ExtendedComplex, 6> p;
        for (auto& x : p) x = s.point();
        p[static_cast<std::size_t>(s.index(3))] = ExtendedComplex::infinity();
        p[3 + static_cast<std::size_t>(s.index(3))] = ExtendedComplex::infinity();
        const MoebiusMap h = from_three_points(p[0], p[1], p[2], p[3], p[4], p[5]);
        for (int k = 0; k < 3; ++k)
            EXPECT_LE(chordal_distance(apply(h, p[static_cast<std::size_t>(k)]), p[static_cast<std::size_t>(k) + 3]), 1e-9);
    }
}

TEST(FromThreePoints, CoincidentPointsAreDegenerate) {
    const auto inf = ExtendedComplex::infinity();
    EXPECT_THROW(from_three_points(0.0, 0.0, 1.0, 0.0, 1.0, 2.0), DegenerateInputError);
    EXPECT_THROW(from_three_points(0.0, 1.0, 2.0, inf, 1.0, inf), DegenerateInputError);
}

TEST(ParseMap, AcceptsFourCoefficients) {
    const MoebiusMap f = parse_map("2, 1-1i, 0.5i ,1");
    EXPECT_EQ(f.a(), cplx(2.0));
    EXPECT_EQ(f.b(), cplx(1.0, -1.0));
    EXPECT_EQ(f.c(), cplx(0.0, 0.5));
    EXPECT_EQ(f.d(), cplx(1.0));
    EXPECT_TRUE(same_map(parse_map(format_map(f)), f, 0.0));
}

TEST(ParseMap, Errors) {
    EXPECT_THROW(parse_map("1,1,0"), InputError);
    EXPECT_THROW(parse_map("1,1,0,1,1"), InputError);
    EXPECT_THROW(parse_map("1,inf,0,1"), InputError);
    EXPECT_THROW(parse_map("1,2,2,4"), InvalidMapError);
    try {
        parse_map("1,2,x,1");
        FAIL();
    } catch (const InputError& e) {
        EXPECT_EQ(e.position(), 4u);
    }
}
