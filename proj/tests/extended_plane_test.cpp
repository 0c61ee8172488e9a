#include <array>
#include <random>

#include <gtest/gtest.h>

#include "moebius/extended_plane.hpp"

using namespace moebius;

namespace {

// Independent oracle: Euclidean distance between the stereographic images
// on the unit sphere.
std::array<double, 3> to_sphere(const ExtendedComplex& p) {
    if (p.is_infinity()) return {0.0, 0.0, 1.0};
    const cplx z = p.value();
    const double r2 = std::norm(z);
    return {2 * z.real() / (1 + r2), 2 * z.imag() / (1 + r2), (r2 - 1) / (1 + r2)};
}

double sphere_distance(const ExtendedComplex& p, const ExtendedComplex& q) {
    const auto a = to_sphere(p), b = to_sphere(q);
    return std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) + (a[2] - b[2]) * (a[2] - b[2]));
}

ExtendedComplex random_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    std::bernoulli_distribution inf(0.05);
    if (inf(rng)) return ExtendedComplex::infinity();
    return cplx{u(rng), u(rng)};
}

}  // namespace

TEST(ChordalDistance, WorkedExamples) {
    EXPECT_EQ(chordal_distance(0.0, 0.0), 0.0);
    EXPECT_DOUBLE_EQ(chordal_distance(0.0, ExtendedComplex::infinity()), 2.0);
    EXPECT_DOUBLE_EQ(chordal_distance(1.0, -1.0), 2.0);
    EXPECT_EQ(chordal_distance(ExtendedComplex::infinity(), ExtendedComplex::infinity()), 0.0);
}

TEST(ChordalDistance, MatchesStereographicOracle) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        const auto p = random_point(rng), q = random_point(rng);
        EXPECT_NEAR(chordal_distance(p, q), sphere_distance(p, q), 1e-12);
    }
}

TEST(ChordalDistance, SymmetricAndTriangle) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 2000; ++i) {
        const auto p = random_point(rng), q = random_point(rng), r = random_point(rng);
        EXPECT_EQ(chordal_distance(p, q), chordal_distance(q, p));
        EXPECT_LE(chordal_distance(p, r), chordal_distance(p, q) + chordal_distance(q, r) + 1e-12);
        EXPECT_GE(chordal_distance(p, q), 0.0);
        EXPECT_LE(chordal_distance(p, q), 2.0);
    }
}

TEST(ChordalDistance, InversionIsAnIsometry) {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 2000; ++i) {
        auto p = random_point(rng), q = random_point(rng);
        EXPECT_NEAR(chordal_distance(p, q), chordal_distance(reciprocal(p), reciprocal(q)), 1e-9);
    }
    EXPECT_EQ(reciprocal(0.0), ExtendedComplex::infinity());
    EXPECT_EQ(reciprocal(ExtendedComplex::infinity()), ExtendedComplex(0.0));
}

TEST(ChordalDistance, HugeFiniteValuesApproachInfinity) {
    EXPECT_LT(chordal_distance(cplx{1e200, 1e200}, ExtendedComplex::infinity()), 1e-150);
}

TEST(ExtendedComplexTest, RejectsNonFiniteComponents) {
    EXPECT_THROW(ExtendedComplex(cplx{std::numeric_limits<double>::infinity(), 0.0}), InvalidArgumentError);
    EXPECT_THROW(ExtendedComplex(std::nan(""), 0.0), InvalidArgumentError);
    EXPECT_THROW(ExtendedComplex::infinity().value(), InvalidArgumentError);
}

TEST(ParsePoint, GrammarExamples) {
    EXPECT_EQ(parse_point("0"), ExtendedComplex(0.0));
    EXPECT_EQ(parse_point("1-2i"), ExtendedComplex(1.0, -2.0));
    EXPECT_EQ(parse_point("inf"), ExtendedComplex::infinity());
    EXPECT_EQ(parse_point("-2.5i"), ExtendedComplex(0.0, -2.5));
    EXPECT_EQ(parse_point("1i"), ExtendedComplex(0.0, 1.0));
    EXPECT_EQ(parse_point("+3"), ExtendedComplex(3.0));
    EXPECT_EQ(parse_point("1e-3+2E2i"), ExtendedComplex(1e-3, 200.0));
    EXPECT_EQ(parse_point("1e+2i"), ExtendedComplex(0.0, 100.0));
    EXPECT_EQ(parse_point(".5"), ExtendedComplex(0.5));
    EXPECT_EQ(parse_point(" 7 "), ExtendedComplex(7.0));
}

TEST(ParsePoint, DecimalLiteralsAreCorrectlyRounded) {
    EXPECT_EQ(parse_point("0.1").value().real(), 0.1);
    EXPECT_EQ(parse_point("2.2250738585072014e-308").value().real(), 2.2250738585072014e-308);
}

TEST(ParsePoint, MalformedLiteralsReportPosition) {
    struct Case {
        const char* text;
        std::size_t position;
    };
    const Case cases[] = {{"", 0}, {"i", 0}, {"1+", 2}, {"1+2", 3}, {"1+2j", 3}, {"abc", 0},
                          {"1x", 1}, {"2i3", 2}, {"1e", 1}, {"nan", 0}, {"--1", 1}, {"1e999", 0}};
    for (const auto& c : cases) {
        try {
            parse_point(c.text);
            ADD_FAILURE() << "accepted '" << c.text << "'";
        } catch (const InputError& e) {
            EXPECT_EQ(e.position(), c.position) << c.text;
        }
    }
}

TEST(FormatPoint, RoundTripsExactly) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    std::uniform_int_distribution<int> e(-300, 300);
    for (int i = 0; i < 5000; ++i) {
        const cplx z{u(rng) * std::pow(10.0, e(rng) / 10), (i % 7 == 0) ? 0.0 : u(rng) * std::pow(10.0, e(rng))};
        const ExtendedComplex p = (i % 5 == 0) ? cplx{0.0, z.imag()} : z;
        const std::string text = format_point(p);
        EXPECT_EQ(parse_point(text), p) << text;
        EXPECT_EQ(format_point(parse_point(text)), text);
    }
    EXPECT_EQ(format_point(ExtendedComplex::infinity()), "inf");
    EXPECT_EQ(format_point(cplx{1.0, -2.0}), "1-2i");
    EXPECT_EQ(format_point(cplx{0.0, 1.0}), "1i");
    EXPECT_EQ(format_point(cplx{0.5, 0.25}), "0.5+0.25i");
}
