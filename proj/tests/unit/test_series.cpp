#include "doctest.h"

#include "surfmaps/series.hpp"

using namespace surfmaps;

TEST_CASE("series arithmetic") {
    Series x = bivariate_var(6, kBlack), y = bivariate_var(6, kWhite);
    Series one = bivariate_const(6, 1);
    Series g = (one - x - y).reciprocal();
    CHECK(g.coeff({2, 3}) == 10);
    CHECK((g * (one - x - y)) == one);
    Series s = (one + x).pow(2);
    CHECK(s.sqrt() == one + x);
    CHECK(swap_colors(x) == y);
    CHECK_THROWS_AS((x + y).reciprocal(), SeriesError);
}

TEST_CASE("delta picks colours by parity") {
    Series x = bivariate_var(6, kBlack), y = bivariate_var(6, kWhite);
    CHECK(delta(0, 1, x, y) == x);
    CHECK(delta(1, 2, x, y) == y);
    CHECK(delta(0, 3, x, y) == x * x * y);
    CHECK(delta(2, 2, x, y) == bivariate_const(6, 1));
}

TEST_CASE("four-valent tree series satisfy their equations") {
    TreeSeries t = tree_series_four_valent(8);
    Series zb = bivariate_var(8, kBlack);
    CHECK(t.black == zb + t.black * t.black + t.white * t.black * mpq_class(2));
    CHECK(swap_colors(t.black) == t.white);
}

TEST_CASE("walk series: three computations agree") {
    MotzkinSeries a = motzkin_fixed_point(8), b = motzkin_closed_form(8), c = motzkin_direct(8);
    CHECK(a.b == b.b);
    CHECK(a.d == b.d);
    CHECK(a.d_black == b.d_black);
    CHECK(a.d_white == b.d_white);
    CHECK(c.b == b.b);
    CHECK(c.d_black == b.d_black);
    Series tb = bivariate_var(8, kBlack), tw = bivariate_var(8, kWhite);
    CHECK(tb * b.d_white == tw * b.d_black);
}

TEST_CASE("rationality probe") {
    Series x = bivariate_var(12, kBlack), y = bivariate_var(12, kWhite);
    Series one = bivariate_const(12, 1);
    Series r = (one + x * y) * (one - x - y * y).reciprocal();
    auto w = rationality_probe(r);
    REQUIRE(w.has_value());
    CHECK((w->q * r) == w->p);
    // an algebraic, non rational series
    MotzkinSeries m = motzkin_closed_form(12);
    CHECK_FALSE(rationality_probe(m.b).has_value());
    CHECK_THROWS_AS(rationality_probe_fixed(r, 8, 8), SeriesError);
}
