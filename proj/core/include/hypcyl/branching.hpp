#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hypcyl {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Catalan triangle c_{k,n}: c_{0,0} = 1, c_{-1,n} = 0, c_{n+1,n} = 0 and
/// c_{k,n} = sum_{l=k-1}^{n-1} c_{l,n-1}, built by the recursion.
class CatalanTriangle {
public:
    explicit CatalanTriangle(int n_max);
    const BigInt& at(int k, int n) const;
    int n_max() const { return n_max_; }

private:
    int n_max_;
    std::vector<std::vector<BigInt>> rows_;
};

/// Closed form (k+1)/(n+1) * binom(2n-k, n), exact.
BigInt catalan(int k, int n);

/// Element of the span of {x^k} + {e^{x/2}, x e^{x/2}} with exact rational
/// coefficients. Large enough to hold every g_n and the operator's
/// eigenfunction (x+2)e^{x/2}.
struct ExpPolynomial {
    std::vector<BigRat> coeffs;  // coefficient of x^k
    BigRat c_exp = 0;            // coefficient of e^{x/2}
    BigRat c_xexp = 0;           // coefficient of x e^{x/2}

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    bool is_polynomial() const { return c_exp == 0 && c_xexp == 0; }

    /// Floating evaluation with compensated (Neumaier) summation of terms.
    double eval(double x) const;
    /// Exact rational evaluation; polynomial part only.
    BigRat eval_exact(const BigRat& x) const;

    bool operator==(const ExpPolynomial& other) const;
};

/// g_n(x) = sum_k c_{k,n} x^k / k!.
ExpPolynomial g_poly(int n);

/// Exact image under T(g) = int_0^x g(y) dy + int_x^inf e^{x-y} g(y) dy.
/// Monomials map by T(x^k/k!) = sum_{l<=k+1} x^l/l!; the exponential basis
/// maps by T(e^{x/2}) = 4 e^{x/2} - 2 and T(x e^{x/2}) = 4 x e^{x/2} + 4.
ExpPolynomial apply_T(const ExpPolynomial& p);

/// (x+2) e^{x/2}, the eigenfunction of T with eigenvalue 4.
ExpPolynomial eigenfunction_x2exp();

/// Generation-n density f_n(R) = u^n g_{n-1}(R). Exact rational evaluation
/// up to the cached table depth, log-space floating beyond it.
double f_n(int n, double R, double u);
double log_f_n(int n, double R, double u);

/// Expected count F_n(R) = u^n sum_k c_{k,n-1} R^{k+1}/(k+1)!.
double F_n(int n, double R, double u);
double log_F_n(int n, double R, double u);

/// Depth of the exact coefficient table backing f_n / F_n.
inline constexpr int kExactTableDepth = 60;

/// Closed bound u e^{4ux}/(1-4u) on sum_n f_n(x); requires u < 1/4.
double subcritical_bound(double x, double u);

/// Companion bound e^{4uR}/(4(1-4u)) on sum_n F_n(R); requires u < 1/4.
double sum_F_subcritical_bound(double R, double u);

/// Lower bound u^{n+1} 4^n R / (2(n+1)^2) for F_{n+1}(R).
double supercritical_lower(int n, double R, double u);
double log_supercritical_lower(int n, double R, double u);

/// "subcritical" (u < 1/4), "supercritical" (u > 1/4), or
/// "critical (no claim)" at u = 1/4 exactly.
std::string criticality_label(double u);

}  // namespace hypcyl
