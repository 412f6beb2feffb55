#include "hypcyl/branching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hypcyl {

CatalanTriangle::CatalanTriangle(int n_max) : n_max_(n_max) {
    if (n_max < 0) throw std::invalid_argument("CatalanTriangle: n_max >= 0 required");
    rows_.resize(n_max + 1);
    rows_[0] = {BigInt(1)};
    for (int n = 1; n <= n_max; ++n) {
        rows_[n].resize(n + 1);
        // c_{k,n} = sum_{l=k-1}^{n-1} c_{l,n-1}; build as suffix sums of the
        // previous row, highest k first.
        BigInt suffix = 0;
        for (int k = n; k >= 0; --k) {
            if (k >= 1) suffix += rows_[n - 1][k - 1];  // k = 0 adds c_{-1,n-1} = 0
            rows_[n][k] = suffix;
        }
    }
}

const BigInt& CatalanTriangle::at(int k, int n) const {
    if (n < 0 || n > n_max_ || k < 0 || k > n)
        throw std::invalid_argument("CatalanTriangle::at: need 0 <= k <= n <= n_max");
    return rows_[n][k];
}

BigInt catalan(int k, int n) {
    if (k < 0 || n < 0 || k > n) throw std::invalid_argument("catalan: need 0 <= k <= n");
    // (k+1)/(n+1) * binom(2n-k, n)
    BigInt binom = 1;
    for (int i = 1; i <= n; ++i) {
        binom *= (2 * n - k - n + i);  // (n-k+1) ... (2n-k)
        binom /= i;
    }
    BigInt num = binom * (k + 1);
    if (num % (n + 1) != 0) throw std::logic_error("catalan: closed form not integral");
    return num / (n + 1);
}

namespace {

const CatalanTriangle& cached_triangle() {
    static const CatalanTriangle table(kExactTableDepth);
    return table;
}

BigRat rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("expected a finite value");
    return BigRat(x);
}

BigInt factorial(int k) {
    BigInt f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

BigRat rat_pow(const BigRat& base, int n) {
    using boost::multiprecision::numerator;
    using boost::multiprecision::denominator;
    return BigRat(boost::multiprecision::pow(numerator(base), static_cast<unsigned>(n)),
                  boost::multiprecision::pow(denominator(base), static_cast<unsigned>(n)));
}

// log c_{k,n} via lgamma; used past the exact table.
double log_catalan(int k, int n) {
    return std::log(static_cast<double>(k + 1)) - std::log(static_cast<double>(n + 1)) +
           std::lgamma(2.0 * n - k + 1.0) - std::lgamma(n + 1.0) - std::lgamma(n - k + 1.0);
}

double log_sum_exp(const std::vector<double>& terms) {
    double top = -std::numeric_limits<double>::infinity();
    for (double t : terms) top = std::max(top, t);
    if (!std::isfinite(top)) return top;
    double s = 0.0;
    for (double t : terms) s += std::exp(t - top);
    return top + std::log(s);
}

}  // namespace

double ExpPolynomial::eval(double x) const {
    // Neumaier compensated sum over monomials plus the exponential part.
    double sum = 0.0, comp = 0.0;
    auto add = [&](double term) {
        const double t = sum + term;
        if (std::fabs(sum) >= std::fabs(term))
            comp += (sum - t) + term;
        else
            comp += (term - t) + sum;
        sum = t;
    };
    double xp = 1.0;
    for (const auto& c : coeffs) {
        add(static_cast<double>(c) * xp);
        xp *= x;
    }
    if (c_exp != 0 || c_xexp != 0) {
        const double e = std::exp(0.5 * x);
        add(static_cast<double>(c_exp) * e);
        add(static_cast<double>(c_xexp) * x * e);
    }
    return sum + comp;
}

BigRat ExpPolynomial::eval_exact(const BigRat& x) const {
    if (!is_polynomial())
        throw std::invalid_argument("ExpPolynomial::eval_exact: exponential part present");
    BigRat acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

bool ExpPolynomial::operator==(const ExpPolynomial& other) const {
    const std::size_t n = std::max(coeffs.size(), other.coeffs.size());
    for (std::size_t k = 0; k < n; ++k) {
        const BigRat a = k < coeffs.size() ? coeffs[k] : BigRat(0);
        const BigRat b = k < other.coeffs.size() ? other.coeffs[k] : BigRat(0);
        if (a != b) return false;
    }
    return c_exp == other.c_exp && c_xexp == other.c_xexp;
}

ExpPolynomial g_poly(int n) {
    if (n < 0) throw std::invalid_argument("g_poly: n >= 0 required");
    if (n > kExactTableDepth)
        throw std::invalid_argument("g_poly: n exceeds the exact table depth");
    const CatalanTriangle& table = cached_triangle();
    ExpPolynomial g;
    g.coeffs.resize(n + 1);
    for (int k = 0; k <= n; ++k) g.coeffs[k] = BigRat(table.at(k, n), factorial(k));
    return g;
}

ExpPolynomial apply_T(const ExpPolynomial& p) {
    ExpPolynomial out;
    const int deg = p.degree();
    out.coeffs.assign(deg + 2, BigRat(0));
    // T(a_k x^k) contributes a_k k!/l! to x^l for every l <= k+1. With
    // P_j = sum_{k>=j} a_k k!, the new coefficient of x^l is P_{l-1}/l!
    // (P_{-1} = P_0).
    std::vector<BigInt> fact(deg + 2);
    fact[0] = 1;
    for (int k = 1; k <= deg + 1; ++k) fact[k] = fact[k - 1] * k;
    std::vector<BigRat> suffix(deg + 2, BigRat(0));
    for (int k = deg; k >= 0; --k) suffix[k] = suffix[k + 1] + p.coeffs[k] * BigRat(fact[k]);
    for (int l = 0; l <= deg + 1; ++l) {
        const BigRat& pl = suffix[l == 0 ? 0 : l - 1];
        out.coeffs[l] = pl / BigRat(fact[l]);
    }
    // Exponential basis: T(e^{x/2}) = 4 e^{x/2} - 2, T(x e^{x/2}) = 4 x e^{x/2} + 4.
    out.c_exp = 4 * p.c_exp;
    out.c_xexp = 4 * p.c_xexp;
    out.coeffs[0] += -2 * p.c_exp + 4 * p.c_xexp;
    while (out.coeffs.size() > 1 && out.coeffs.back() == 0) out.coeffs.pop_back();
    return out;
}

ExpPolynomial eigenfunction_x2exp() {
    ExpPolynomial g;
    g.coeffs = {BigRat(0)};
    g.c_exp = 2;
    g.c_xexp = 1;
    return g;
}

double f_n(int n, double R, double u) {
    if (n < 1 || R < 0.0 || u < 0.0) throw std::invalid_argument("f_n: bad arguments");
    if (u == 0.0) return 0.0;
    if (n - 1 <= kExactTableDepth) {
        const BigRat exact = g_poly(n - 1).eval_exact(rational_from_double(R));
        const BigRat un = rat_pow(rational_from_double(u), n);
        return static_cast<double>(un * exact);
    }
    return std::exp(log_f_n(n, R, u));
}

double log_f_n(int n, double R, double u) {
    if (n < 1 || R < 0.0 || u < 0.0) throw std::invalid_argument("log_f_n: bad arguments");
    if (u == 0.0) return -std::numeric_limits<double>::infinity();
    const double logR = R > 0.0 ? std::log(R) : -std::numeric_limits<double>::infinity();
    std::vector<double> terms(n);
    for (int k = 0; k <= n - 1; ++k) {
        const double lt = k == 0 ? 0.0 : k * logR - std::lgamma(k + 1.0);
        terms[k] = log_catalan(k, n - 1) + lt;
    }
    return n * std::log(u) + log_sum_exp(terms);
}

double F_n(int n, double R, double u) {
    if (n < 1 || R < 0.0 || u < 0.0) throw std::invalid_argument("F_n: bad arguments");
    if (u == 0.0 || R == 0.0) return 0.0;
    if (n - 1 <= kExactTableDepth) {
        const CatalanTriangle& table = cached_triangle();
        const BigRat Rr = rational_from_double(R);
        BigRat sum = 0;
        BigRat Rpow = Rr;
        BigInt fact = 1;
        for (int k = 0; k <= n - 1; ++k) {
            fact *= (k + 1);
            sum += BigRat(table.at(k, n - 1)) * Rpow / BigRat(fact);
            Rpow *= Rr;
        }
        const BigRat un = rat_pow(rational_from_double(u), n);
        return static_cast<double>(un * sum);
    }
    return std::exp(log_F_n(n, R, u));
}

double log_F_n(int n, double R, double u) {
    if (n < 1 || R < 0.0 || u < 0.0) throw std::invalid_argument("log_F_n: bad arguments");
    if (u == 0.0 || R == 0.0) return -std::numeric_limits<double>::infinity();
    const double logR = std::log(R);
    std::vector<double> terms(n);
    for (int k = 0; k <= n - 1; ++k)
        terms[k] = log_catalan(k, n - 1) + (k + 1) * logR - std::lgamma(k + 2.0);
    return n * std::log(u) + log_sum_exp(terms);
}

double subcritical_bound(double x, double u) {
    if (!(u > 0.0 && u < 0.25))
        throw std::invalid_argument("subcritical_bound: requires 0 < u < 1/4");
    if (x < 0.0) throw std::invalid_argument("subcritical_bound: x >= 0 required");
    return u * std::exp(4.0 * u * x) / (1.0 - 4.0 * u);
}

double sum_F_subcritical_bound(double R, double u) {
    if (!(u > 0.0 && u < 0.25))
        throw std::invalid_argument("sum_F_subcritical_bound: requires 0 < u < 1/4");
    if (R < 0.0) throw std::invalid_argument("sum_F_subcritical_bound: R >= 0 required");
    return std::exp(4.0 * u * R) / (4.0 * (1.0 - 4.0 * u));
}

double supercritical_lower(int n, double R, double u) {
    if (n < 0 || R <= 0.0 || u < 0.0)
        throw std::invalid_argument("supercritical_lower: bad arguments");
    return std::exp(log_supercritical_lower(n, R, u));
}

double log_supercritical_lower(int n, double R, double u) {
    if (n < 0 || R <= 0.0 || u < 0.0)
        throw std::invalid_argument("log_supercritical_lower: bad arguments");
    if (u == 0.0) return -std::numeric_limits<double>::infinity();
    return (n + 1) * std::log(u) + n * std::log(4.0) + std::log(R) -
           std::log(2.0 * (n + 1.0) * (n + 1.0));
}

std::string criticality_label(double u) {
    if (u < 0.25) return "subcritical";
    if (u > 0.25) return "supercritical";
    return "critical (no claim)";
}

}  // namespace hypcyl
