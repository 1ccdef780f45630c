#pragma once

#include <gmpxx.h>

#include <functional>
#include <memory>
#include <stdexcept>
#include <optional>
#include <string>
#include <vector>

namespace surfmaps {

/// Exact truncated power series in a fixed number of variables; every
/// monomial of total degree <= order is stored (dense).
class Series {
public:
    struct Layout;  // monomial tables, defined in the source file

    Series() = default;
    Series(int nvars, int order);

    static Series constant(int nvars, int order, const mpq_class& c);
    static Series variable(int nvars, int order, int i);

    int nvars() const { return nvars_; }
    int order() const { return order_; }

    const mpq_class& coeff(const std::vector<int>& exps) const;
    void set(const std::vector<int>& exps, const mpq_class& c);
    void add_to(const std::vector<int>& exps, const mpq_class& c);
    mpq_class constant_term() const { return c_.empty() ? mpq_class(0) : c_[0]; }

    Series operator+(const Series& o) const;
    Series operator-(const Series& o) const;
    Series operator-() const;
    Series operator*(const Series& o) const;
    Series operator*(const mpq_class& k) const;
    Series& operator+=(const Series& o);
    Series& operator-=(const Series& o);
    Series& operator*=(const Series& o);
    bool operator==(const Series& o) const;
    bool operator!=(const Series& o) const { return !(*this == o); }

    Series pow(int e) const;
    /// Throws SeriesError(NotInvertible) if the constant term vanishes.
    Series reciprocal() const;
    /// Needs a constant term that is a rational square; throws SqrtUndefined.
    Series sqrt() const;
    /// Exact division by a monomial; throws if some coefficient would land at
    /// a negative exponent. The result keeps the same order, so the top
    /// degrees are lost: compute at a higher order first.
    Series divide_monomial(const std::vector<int>& exps) const;
    /// Variables mapped to series in another ring (images must have no
    /// constant term unless the series is a polynomial of degree <= order).
    Series substitute(const std::vector<Series>& images) const;
    /// Variables permuted: new variable perm[i] receives old variable i.
    Series permute(const std::vector<int>& perm) const;
    Series truncate(int order) const;
    Series with_order(int order) const;  // pad or truncate

    bool is_zero() const;
    int valuation() const;  // lowest degree with a nonzero coefficient, -1 if zero

    /// Visits nonzero coefficients in graded lexicographic order.
    void for_each(const std::function<void(const std::vector<int>&, const mpq_class&)>& f) const;

    std::string to_string(const std::vector<std::string>& names = {}) const;
    /// One line per nonzero coefficient: exponents, numerator, denominator.
    std::string to_tsv() const;

private:
    int nvars_ = 0, order_ = 0;
    std::vector<mpq_class> c_;
    std::shared_ptr<const Layout> L_;  // shared monomial tables per (nvars, order)

    int index(const std::vector<int>& exps) const;
    void require_same(const Series& o) const;
};

class SeriesError : public std::runtime_error {
public:
    SeriesError(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

/// Iterates x <- f(x) from init until two iterates agree; throws
/// NonContractive after order + 2 rounds without convergence.
std::vector<Series> fixed_point_solve(const std::function<std::vector<Series>(const std::vector<Series>&)>& f,
                                      std::vector<Series> init);

// ---- two-variable layer: variables (t_black, t_white) or (x, y) ----

constexpr int kBlack = 0;
constexpr int kWhite = 1;

Series bivariate_var(int order, int i);
Series bivariate_const(int order, const mpq_class& c);
/// Swaps the two variables.
Series swap_colors(const Series& s);

/// Delta_i^j(x, y): x per even integer and y per odd integer of [i, j).
Series delta(int i, int j, const Series& x, const Series& y);

struct TreeSeries {
    Series black, white;
};

/// Four-valent blossoming trees: T_b = z_b + T_b^2 + 2 T_w T_b and the
/// colour-swapped equation. Variables (z_b, z_w).
TreeSeries tree_series_four_valent(int order);

/// General trees. Variables are z_1..z_maxk, x, y (in that order).
TreeSeries tree_series_general(int order, int maxk);

struct MotzkinSeries {
    Series d_black, d_white, b, d;
};

/// Three independent computations of the walk series.
MotzkinSeries motzkin_fixed_point(int order);
MotzkinSeries motzkin_closed_form(int order);
MotzkinSeries motzkin_direct(int order);

/// Result of an exact rational reconstruction Q * S = P up to the order.
struct RationalWitness {
    Series p, q;
    int deg_p = 0, deg_q = 0;
    int unknowns = 0, equations = 0;
};

/// Tries numerator/denominator degrees (d, d) for d = 0.. while the linear
/// system stays strictly overdetermined; returns the first exact solution.
std::optional<RationalWitness> rationality_probe(const Series& s, int max_degree = -1);
/// Fixed degrees; throws InsufficientTruncation when not overdetermined.
std::optional<RationalWitness> rationality_probe_fixed(const Series& s, int deg_p, int deg_q);

}  // namespace surfmaps
