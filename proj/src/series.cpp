#include "surfmaps/series.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace surfmaps {

struct Series::Layout {
    int nvars = 0, order = 0;
    std::vector<std::vector<int>> mono;  // graded, then lexicographic (first variable largest)
    std::vector<int> degree;
    std::vector<long> code;              // base (order+1) encoding
    std::vector<int> by_code;            // code -> index, -1 when degree > order
    std::vector<int> deg_start;          // deg_start[d] = first index of degree d; size order+2
};

namespace {

void gen_degree(int nvars, int d, std::vector<int>& cur, int pos, std::vector<std::vector<int>>& out) {
    if (pos == nvars - 1) {
        cur[pos] = d;
        out.push_back(cur);
        return;
    }
    for (int a = d; a >= 0; --a) {
        cur[pos] = a;
        gen_degree(nvars, d - a, cur, pos + 1, out);
    }
}

}  // namespace

static std::shared_ptr<const Series::Layout> make_layout(int nvars, int order) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const Series::Layout>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(nvars, order);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto L = std::make_shared<Series::Layout>();
    L->nvars = nvars;
    L->order = order;
    long base = order + 1, total = 1;
    for (int i = 0; i < nvars; ++i) {
        total *= base;
        if (total > (1L << 26)) throw SeriesError("TooLarge", "series layout too large");
    }
    L->by_code.assign(total, -1);
    L->deg_start.assign(order + 2, 0);
    std::vector<int> cur(nvars, 0);
    for (int d = 0; d <= order; ++d) {
        L->deg_start[d] = static_cast<int>(L->mono.size());
        if (nvars == 0) {
            if (d == 0) L->mono.push_back({});
            continue;
        }
        gen_degree(nvars, d, cur, 0, L->mono);
    }
    L->deg_start[order + 1] = static_cast<int>(L->mono.size());
    for (size_t k = 0; k < L->mono.size(); ++k) {
        long c = 0;
        int deg = 0;
        for (int i = nvars - 1; i >= 0; --i) c = c * base + L->mono[k][i];
        for (int e : L->mono[k]) deg += e;
        L->code.push_back(c);
        L->degree.push_back(deg);
        L->by_code[c] = static_cast<int>(k);
    }
    cache[key] = L;
    return L;
}

Series::Series(int nvars, int order) : nvars_(nvars), order_(order) {
    if (order < 0) throw SeriesError("BadOrder", "negative order");
    L_ = make_layout(nvars, order);
    c_.assign(L_->mono.size(), mpq_class(0));
}

Series Series::constant(int nvars, int order, const mpq_class& c) {
    Series s(nvars, order);
    s.c_[0] = c;
    return s;
}

Series Series::variable(int nvars, int order, int i) {
    Series s(nvars, order);
    if (order >= 1) {
        std::vector<int> e(nvars, 0);
        e[i] = 1;
        s.set(e, 1);
    }
    return s;
}

int Series::index(const std::vector<int>& exps) const {
    if (static_cast<int>(exps.size()) != nvars_) throw SeriesError("BadMonomial", "wrong arity");
    int deg = 0;
    long c = 0, base = order_ + 1;
    for (int i = nvars_ - 1; i >= 0; --i) {
        if (exps[i] < 0) return -1;
        deg += exps[i];
        c = c * base + exps[i];
    }
    if (deg > order_) return -1;
    return L_->by_code[c];
}

const mpq_class& Series::coeff(const std::vector<int>& exps) const {
    static const mpq_class zero(0);
    int k = index(exps);
    return k < 0 ? zero : c_[k];
}

void Series::set(const std::vector<int>& exps, const mpq_class& c) {
    int k = index(exps);
    if (k >= 0) c_[k] = c;
}

void Series::add_to(const std::vector<int>& exps, const mpq_class& c) {
    int k = index(exps);
    if (k >= 0) c_[k] += c;
}

void Series::require_same(const Series& o) const {
    if (nvars_ != o.nvars_ || order_ != o.order_)
        throw SeriesError("RingMismatch", "series over different rings");
}

Series Series::operator+(const Series& o) const {
    Series r = *this;
    r += o;
    return r;
}

Series Series::operator-(const Series& o) const {
    Series r = *this;
    r -= o;
    return r;
}

Series Series::operator-() const {
    Series r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

Series& Series::operator+=(const Series& o) {
    require_same(o);
    for (size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
}

Series& Series::operator-=(const Series& o) {
    require_same(o);
    for (size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
}

Series Series::operator*(const Series& o) const {
    require_same(o);
    Series r(nvars_, order_);
    const auto& L = *L_;
    mpq_class t;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (sgn(c_[i]) == 0) continue;
        int lim = L.deg_start[order_ - L.degree[i] + 1];
        for (int j = 0; j < lim; ++j) {
            if (sgn(o.c_[j]) == 0) continue;
            int k = L.by_code[L.code[i] + L.code[j]];
            mpq_mul(t.get_mpq_t(), c_[i].get_mpq_t(), o.c_[j].get_mpq_t());
            r.c_[k] += t;
        }
    }
    return r;
}

Series& Series::operator*=(const Series& o) {
    *this = *this * o;
    return *this;
}

Series Series::operator*(const mpq_class& k) const {
    Series r = *this;
    for (auto& c : r.c_) c *= k;
    return r;
}

bool Series::operator==(const Series& o) const {
    return nvars_ == o.nvars_ && order_ == o.order_ && c_ == o.c_;
}

Series Series::pow(int e) const {
    if (e < 0) return reciprocal().pow(-e);
    Series r = constant(nvars_, order_, 1), b = *this;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

namespace {

// Horner evaluation of sum a_k u^k, with u free of constant term.
Series horner(const std::vector<mpq_class>& a, const Series& u) {
    Series r = Series::constant(u.nvars(), u.order(), a.back());
    for (int k = static_cast<int>(a.size()) - 2; k >= 0; --k)
        r = r * u + Series::constant(u.nvars(), u.order(), a[k]);
    return r;
}

}  // namespace

Series Series::reciprocal() const {
    mpq_class c0 = constant_term();
    if (sgn(c0) == 0) throw SeriesError("NotInvertible", "constant term is zero");
    Series u = *this * mpq_class(1 / c0);
    u.c_[0] -= 1;
    std::vector<mpq_class> a(order_ + 1);
    for (int k = 0; k <= order_; ++k) a[k] = (k % 2 ? -1 : 1);
    return horner(a, u) * mpq_class(1 / c0);
}

Series Series::sqrt() const {
    mpq_class c0 = constant_term();
    if (sgn(c0) <= 0) throw SeriesError("SqrtUndefined", "constant term not positive");
    mpz_class num = c0.get_num(), den = c0.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        throw SeriesError("SqrtUndefined", "constant term is not a rational square");
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    mpq_class r0(rn, rd);
    r0.canonicalize();
    Series u = *this * mpq_class(1 / c0);
    u.c_[0] -= 1;
    // binomial(1/2, k)
    std::vector<mpq_class> a(order_ + 1);
    a[0] = 1;
    for (int k = 1; k <= order_; ++k) a[k] = a[k - 1] * (mpq_class(1, 2) - (k - 1)) / k;
    return horner(a, u) * r0;
}

Series Series::divide_monomial(const std::vector<int>& exps) const {
    Series r(nvars_, order_);
    for (size_t k = 0; k < c_.size(); ++k) {
        if (sgn(c_[k]) == 0) continue;
        std::vector<int> e = L_->mono[k];
        bool ok = true;
        for (int i = 0; i < nvars_; ++i) {
            e[i] -= exps[i];
            if (e[i] < 0) ok = false;
        }
        if (!ok) throw SeriesError("NotDivisible", "monomial does not divide the series");
        r.set(e, c_[k]);
    }
    return r;
}

Series Series::substitute(const std::vector<Series>& images) const {
    if (static_cast<int>(images.size()) != nvars_) throw SeriesError("BadSubstitution", "arity");
    if (images.empty()) throw SeriesError("BadSubstitution", "no target ring");
    const int tv = images[0].nvars(), to = images[0].order();
    std::vector<std::vector<Series>> pw(nvars_);
    for (int i = 0; i < nvars_; ++i) {
        pw[i].push_back(Series::constant(tv, to, 1));
        for (int k = 1; k <= order_; ++k) pw[i].push_back(pw[i].back() * images[i]);
    }
    Series r(tv, to);
    for (size_t k = 0; k < c_.size(); ++k) {
        if (sgn(c_[k]) == 0) continue;
        const auto& e = L_->mono[k];
        Series term = Series::constant(tv, to, c_[k]);
        for (int i = 0; i < nvars_; ++i)
            if (e[i]) term *= pw[i][e[i]];
        r += term;
    }
    return r;
}

Series Series::permute(const std::vector<int>& perm) const {
    Series r(nvars_, order_);
    for (size_t k = 0; k < c_.size(); ++k) {
        if (sgn(c_[k]) == 0) continue;
        std::vector<int> e(nvars_);
        for (int i = 0; i < nvars_; ++i) e[perm[i]] = L_->mono[k][i];
        r.set(e, c_[k]);
    }
    return r;
}

Series Series::with_order(int order) const {
    Series r(nvars_, order);
    for (size_t k = 0; k < c_.size(); ++k)
        if (sgn(c_[k]) != 0) r.set(L_->mono[k], c_[k]);
    return r;
}

Series Series::truncate(int order) const { return with_order(std::min(order, order_)); }

bool Series::is_zero() const {
    for (const auto& c : c_)
        if (sgn(c) != 0) return false;
    return true;
}

int Series::valuation() const {
    for (size_t k = 0; k < c_.size(); ++k)
        if (sgn(c_[k]) != 0) return L_->degree[k];
    return -1;
}

void Series::for_each(const std::function<void(const std::vector<int>&, const mpq_class&)>& f) const {
    for (size_t k = 0; k < c_.size(); ++k)
        if (sgn(c_[k]) != 0) f(L_->mono[k], c_[k]);
}

std::string Series::to_string(const std::vector<std::string>& names) const {
    std::ostringstream os;
    bool first = true;
    for_each([&](const std::vector<int>& e, const mpq_class& c) {
        if (!first) os << " + ";
        first = false;
        os << c.get_str();
        for (int i = 0; i < nvars_; ++i) {
            if (!e[i]) continue;
            os << "*" << (i < static_cast<int>(names.size()) ? names[i] : "v" + std::to_string(i));
            if (e[i] > 1) os << "^" << e[i];
        }
    });
    if (first) os << "0";
    os << " + O(" << order_ + 1 << ")";
    return os.str();
}

std::string Series::to_tsv() const {
    std::ostringstream os;
    for_each([&](const std::vector<int>& e, const mpq_class& c) {
        for (int x : e) os << x << '\t';
        os << c.get_num().get_str() << '\t' << c.get_den().get_str() << '\n';
    });
    return os.str();
}

std::vector<Series> fixed_point_solve(const std::function<std::vector<Series>(const std::vector<Series>&)>& f,
                                      std::vector<Series> x) {
    const int order = x.empty() ? 0 : x[0].order();
    for (int it = 0; it <= order + 3; ++it) {
        std::vector<Series> y = f(x);
        if (y == x) return x;
        x = std::move(y);
    }
    throw SeriesError("NonContractive", "fixed point iteration did not stabilise");
}

Series bivariate_var(int order, int i) { return Series::variable(2, order, i); }
Series bivariate_const(int order, const mpq_class& c) { return Series::constant(2, order, c); }
Series swap_colors(const Series& s) { return s.permute({1, 0}); }

Series delta(int i, int j, const Series& x, const Series& y) {
    Series r = Series::constant(x.nvars(), x.order(), 1);
    for (int k = i; k < j; ++k) r *= ((k % 2 + 2) % 2 == 0) ? x : y;
    return r;
}

TreeSeries tree_series_four_valent(int order) {
    Series zb = bivariate_var(order, kBlack), zw = bivariate_var(order, kWhite);
    Series zero(2, order);
    auto sol = fixed_point_solve(
        [&](const std::vector<Series>& t) {
            const Series &b = t[0], &w = t[1];
            Series bw = b * w * mpq_class(2);
            return std::vector<Series>{zb + b * b + bw, zw + w * w + bw};
        },
        {zero, zero});
    return {sol[0], sol[1]};
}

TreeSeries tree_series_general(int order, int maxk) {
    const int nv = maxk + 2;
    Series x = Series::variable(nv, order, maxk), y = Series::variable(nv, order, maxk + 1);
    // coef[k][a]: number of index vectors giving a product with a black factors
    std::vector<std::vector<long>> coef(maxk + 1);
    for (int k = 1; k <= maxk; ++k) {
        coef[k].assign(k + 1, 0);
        std::vector<int> idx(k, 0);
        std::function<void(int, int)> rec = [&](int pos, int used) {
            if (pos == k) {
                int black = 0, run = 0;
                for (int j = 1; j <= k; ++j) {
                    run += idx[j - 1];
                    if (((j - 1 + run) % 2) == 0) ++black;
                }
                coef[k][black]++;
                return;
            }
            for (int v = 0; used + v <= k - 1; ++v) {
                idx[pos] = v;
                rec(pos + 1, used + v);
            }
        };
        rec(0, 0);
    }
    Series zero(nv, order);
    auto sol = fixed_point_solve(
        [&](const std::vector<Series>& t) {
            Series nb = x, nw = y;
            for (int k = 1; k <= maxk; ++k) {
                Series zk = Series::variable(nv, order, k - 1);
                Series sb(nv, order), sw(nv, order);
                for (int a = 0; a <= k; ++a) {
                    if (!coef[k][a]) continue;
                    mpq_class c(coef[k][a]);
                    sb += t[0].pow(a) * t[1].pow(k - a) * c;
                    sw += t[1].pow(a) * t[0].pow(k - a) * c;
                }
                nb += zk * sb;
                nw += zk * sw;
            }
            return std::vector<Series>{nb, nw};
        },
        {zero, zero});
    return {sol[0], sol[1]};
}

MotzkinSeries motzkin_fixed_point(int order) {
    Series tb = bivariate_var(order, kBlack), tw = bivariate_var(order, kWhite);
    Series h = (tb + tw) * mpq_class(2);
    Series one = bivariate_const(order, 1), zero(2, order);
    auto d = fixed_point_solve(
        [&](const std::vector<Series>& v) {
            return std::vector<Series>{tb + h * v[0] + tb * v[1] * v[0], tw + h * v[1] + tw * v[0] * v[1]};
        },
        {zero, zero});
    auto b = fixed_point_solve(
        [&](const std::vector<Series>& v) {
            return std::vector<Series>{one + h * v[0] + tb * d[1] * v[0] * mpq_class(2)};
        },
        {one});
    MotzkinSeries m{d[0], d[1], b[0], Series()};
    // D_black / t_black, computed one order higher so nothing is lost
    Series tb1 = bivariate_var(order + 1, kBlack), tw1 = bivariate_var(order + 1, kWhite);
    Series h1 = (tb1 + tw1) * mpq_class(2), z1(2, order + 1);
    auto d1 = fixed_point_solve(
        [&](const std::vector<Series>& v) {
            return std::vector<Series>{tb1 + h1 * v[0] + tb1 * v[1] * v[0], tw1 + h1 * v[1] + tw1 * v[0] * v[1]};
        },
        {z1, z1});
    m.d = d1[0].divide_monomial({1, 0}).truncate(order);
    return m;
}

MotzkinSeries motzkin_closed_form(int order) {
    const int hi = order + 2;
    Series tb = bivariate_var(hi, kBlack), tw = bivariate_var(hi, kWhite);
    Series one = bivariate_const(hi, 1);
    Series a = one - (tb + tw) * mpq_class(2);
    Series disc = a * a - tb * tw * mpq_class(4);
    Series root = disc.sqrt();
    Series d = ((a - root) * mpq_class(1, 2)).divide_monomial({1, 1});
    MotzkinSeries m;
    m.d = d.truncate(order);
    m.d_black = (tb * d).truncate(order);
    m.d_white = (tw * d).truncate(order);
    m.b = root.reciprocal().truncate(order);
    return m;
}

namespace {

// Walk enumeration: visit(step, height) callbacks are folded into counters
// (flat steps, non-flat steps at even height, at odd height).
using Tally = std::map<std::tuple<int, int, int>, long>;

void walks(int order, int h, int len, int flat, int even, int odd, bool bridge, int start, Tally& out) {
    // primitive: stop when reaching start-1; bridge: record whenever back at start
    if (bridge && len > 0 && h == start) out[{flat, even, odd}]++;
    if (len == order) return;
    auto par = [](int x) { return ((x % 2) + 2) % 2; };
    // flat
    walks(order, h, len + 1, flat + 1, even, odd, bridge, start, out);
    for (int dir : {1, -1}) {
        int ne = even + (par(h) == 0), no = odd + (par(h) == 1);
        int nh = h + dir;
        if (!bridge && nh < start) {
            out[{flat, ne, no}]++;
            continue;
        }
        walks(order, nh, len + 1, flat, ne, no, bridge, start, out);
    }
}

Series fold(int order, const Tally& t, bool swap) {
    Series tb = bivariate_var(order, kBlack), tw = bivariate_var(order, kWhite);
    if (swap) std::swap(tb, tw);
    Series h = (tb + tw) * mpq_class(2);
    Series r(2, order);
    for (const auto& [k, n] : t) {
        auto [flat, even, odd] = k;
        r += h.pow(flat) * tb.pow(even) * tw.pow(odd) * mpq_class(n);
    }
    return r;
}

}  // namespace

MotzkinSeries motzkin_direct(int order) {
    Tally prim, bridges;
    walks(order, 0, 0, 0, 0, 0, false, 0, prim);
    walks(order, 0, 0, 0, 0, 0, true, 0, bridges);
    MotzkinSeries m;
    m.d_black = fold(order, prim, false);
    m.d_white = fold(order, prim, true);
    m.b = fold(order, bridges, false) + bivariate_const(order, 1);
    Tally prim1;
    walks(order + 1, 0, 0, 0, 0, 0, false, 0, prim1);
    m.d = fold(order + 1, prim1, false).divide_monomial({1, 0}).truncate(order);
    return m;
}

namespace {

// Gaussian elimination over Q. Returns a solution of A x = b or nullopt.
std::optional<std::vector<mpq_class>> solve_linear(std::vector<std::vector<mpq_class>> A, std::vector<mpq_class> b) {
    const int rows = static_cast<int>(A.size());
    const int cols = rows ? static_cast<int>(A[0].size()) : 0;
    std::vector<int> pivcol;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (sgn(A[i][c]) != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(A[p], A[r]);
        std::swap(b[p], b[r]);
        mpq_class inv = 1 / A[r][c];
        for (int j = c; j < cols; ++j) A[r][j] *= inv;
        b[r] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || sgn(A[i][c]) == 0) continue;
            mpq_class f = A[i][c];
            for (int j = c; j < cols; ++j) A[i][j] -= f * A[r][j];
            b[i] -= f * b[r];
        }
        pivcol.push_back(c);
        ++r;
    }
    for (int i = r; i < rows; ++i)
        if (sgn(b[i]) != 0) return std::nullopt;
    std::vector<mpq_class> x(cols, 0);
    for (int i = 0; i < r; ++i) x[pivcol[i]] = b[i];
    return x;
}

int monomials_upto(int d) { return d < 0 ? 0 : (d + 1) * (d + 2) / 2; }

constexpr int kSpareDegrees = 2;

}  // namespace

std::optional<RationalWitness> rationality_probe_fixed(const Series& s, int deg_p, int deg_q) {
    if (s.nvars() != 2) throw SeriesError("BadArity", "rationality probe works on two variables");
    const int N = s.order();
    const int mp = monomials_upto(deg_p), mq = monomials_upto(deg_q) - 1;
    const int eqs = monomials_upto(N);
    // Counting monomials is not enough in two variables: near-diagonal
    // approximants with deg_p + deg_q close to N exist for algebraic series
    // (a two-variable echo of the one-variable Pade table). Two full spare
    // degrees rule those out in practice.
    if (deg_p + deg_q > N - kSpareDegrees || mp + mq >= eqs)
        throw SeriesError("InsufficientTruncation", "system is not overdetermined at this truncation");
    std::vector<std::vector<int>> pm, qm, em;
    for (int d = 0; d <= N; ++d)
        for (int a = d; a >= 0; --a) {
            std::vector<int> e{a, d - a};
            em.push_back(e);
            if (d <= deg_p) pm.push_back(e);
            if (d >= 1 && d <= deg_q) qm.push_back(e);
        }
    // unknowns: p coefficients then q coefficients (q_0 = 1 fixed)
    std::vector<std::vector<mpq_class>> A(eqs, std::vector<mpq_class>(mp + mq, 0));
    std::vector<mpq_class> b(eqs, 0);
    for (int r = 0; r < eqs; ++r) {
        const auto& e = em[r];
        b[r] = -s.coeff(e);  // q_0 * s_e moved to the right
        for (int j = 0; j < mp; ++j)
            if (pm[j] == e) A[r][j] = -1;
        for (int j = 0; j < mq; ++j) {
            std::vector<int> rest{e[0] - qm[j][0], e[1] - qm[j][1]};
            if (rest[0] < 0 || rest[1] < 0) continue;
            A[r][mp + j] = s.coeff(rest);
        }
    }
    auto x = solve_linear(A, b);
    if (!x) return std::nullopt;
    RationalWitness w;
    w.p = Series(2, N);
    w.q = Series::constant(2, N, 1);
    for (int j = 0; j < mp; ++j) w.p.set(pm[j], (*x)[j]);
    for (int j = 0; j < mq; ++j) w.q.set(qm[j], (*x)[mp + j]);
    w.deg_p = deg_p;
    w.deg_q = deg_q;
    w.unknowns = mp + mq;
    w.equations = eqs;
    // independent residual check
    if (!(w.q * s - w.p).is_zero()) return std::nullopt;
    return w;
}

std::optional<RationalWitness> rationality_probe(const Series& s, int max_degree) {
    const int N = s.order();
    if (max_degree < 0) max_degree = N;
    for (int total = 0; total <= N - kSpareDegrees; ++total)
        for (int dq = 0; dq <= std::min(total, max_degree); ++dq) {
            int dp = total - dq;
            if (dp > max_degree) continue;
            if (auto w = rationality_probe_fixed(s, dp, dq)) return w;
        }
    return std::nullopt;
}

}  // namespace surfmaps
