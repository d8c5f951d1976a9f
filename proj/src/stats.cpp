#include "ecagr/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>

#include "ecagr/detail/ldlt.hpp"

namespace ecagr::stats {

namespace {

constexpr double kCfTolerance = 1e-16;
constexpr int kCfMaxIterations = 400;

// Continued fraction for the regularized incomplete beta function
// (modified Lentz).
double beta_cf(double a, double b, double x) {
    const double tiny = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kCfMaxIterations; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kCfTolerance) break;
    }
    return h;
}

double reg_inc_beta(double x, double a, double b) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double log_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
    const double bt = std::exp(log_bt);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return bt * beta_cf(a, b, x) / a;
    }
    return 1.0 - bt * beta_cf(b, a, 1.0 - x) / b;
}

// Lower regularized incomplete gamma by series, for x < a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double term = sum;
    for (int k = 0; k < kCfMaxIterations; ++k) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kCfTolerance) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper regularized incomplete gamma by continued fraction, for x >= a + 1.
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kCfMaxIterations; ++i) {
        const double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kCfTolerance) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// AS 241 (PPND16): standard normal quantile, good to ~1e-16 relative.
double normal_quantile(double p) {
    const double q = p - 0.5;
    double r;
    if (std::fabs(q) <= 0.425) {
        r = 0.180625 - q * q;
        const double num =
            (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                  6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
              1.3314166789178437745e2) * r + 3.3871328727963666080e0);
        const double den =
            (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                  3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
              4.2313330701600911252e1) * r + 1.0);
        return q * num / den;
    }
    r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double value;
    if (r <= 5.0) {
        r -= 1.6;
        const double num =
            (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
              4.63033784615654529590e0) * r + 1.42343711074968357734e0);
        const double den =
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
              2.05319162663775882187e0) * r + 1.0);
        value = num / den;
    } else {
        r -= 5.0;
        const double num =
            (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
              5.46378491116411436990e0) * r + 6.65790464350110377720e0);
        const double den =
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
        value = num / den;
    }
    return q < 0.0 ? -value : value;
}

// Polynomial with c[0] the constant term.
double poly(std::span<const double> c, double x) {
    double result = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) result = result * x + c[i];
    return result;
}

void check_df_x(int df, double x, const char* name) {
    if (df < 1) {
        throw ValidationError(std::string(name) + ": df must be >= 1, got " +
                              std::to_string(df));
    }
    if (!std::isfinite(x)) {
        throw ValidationError(std::string(name) + ": x must be finite");
    }
}

struct AuxRegression {
    double r2 = 0.0;     // centered R^2 of e^2 on [1 | X]
    double ess = 0.0;    // explained sum of squares
    double sigma2 = 0.0; // mean of e^2
    bool degenerate_variance = false;
};

AuxRegression auxiliary_regression(const std::map<int, double>& residuals,
                                   const DesignMatrix& design,
                                   const char* name) {
    design.validate();
    const std::size_t n = design.n();
    const std::size_t p = design.p();
    if (residuals.size() != n) {
        throw DataError(std::string(name) +
                        ": residuals do not align with design rows");
    }
    std::vector<double> e2(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto it = residuals.find(design.years[i]);
        if (it == residuals.end()) {
            throw DataError(std::string(name) + ": no residual for year " +
                            std::to_string(design.years[i]));
        }
        e2[i] = it->second * it->second;
    }
    if (n <= p + 1) {
        throw ValidationError(std::string(name) +
                              ": auxiliary regression needs n > p + 1");
    }

    AuxRegression aux;
    aux.sigma2 = std::accumulate(e2.begin(), e2.end(), 0.0) / double(n);
    const double mean = aux.sigma2;
    double sst = 0.0;
    for (double v : e2) sst += (v - mean) * (v - mean);
    if (sst == 0.0) {
        aux.degenerate_variance = true;
        return aux;
    }

    // regressors: intercept plus the main model's predictors
    const std::size_t q = p + 1;
    detail::SymmetricMatrix A(q);
    std::vector<double> b(q, 0.0);
    auto z = [&](std::size_t i, std::size_t j) {
        return j == 0 ? 1.0 : design.rows[i][j - 1];
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < q; ++j) {
            b[j] += z(i, j) * e2[i];
            for (std::size_t k = j; k < q; ++k) {
                A.at(j, k) += z(i, j) * z(i, k);
            }
        }
    }
    for (std::size_t j = 0; j < q; ++j) {
        for (std::size_t k = 0; k < j; ++k) A.at(j, k) = A.at(k, j);
    }
    const auto f = detail::ldlt_factor(A);
    if (!f.ok || detail::rcond_estimate(A, f) < 1e-12) {
        throw NumericError(std::string(name) + ": degenerate auxiliary design");
    }
    const auto coef = detail::ldlt_solve(f, b);
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double fit = 0.0;
        for (std::size_t j = 0; j < q; ++j) fit += z(i, j) * coef[j];
        ssr += (e2[i] - fit) * (e2[i] - fit);
    }
    aux.r2 = std::clamp(1.0 - ssr / sst, 0.0, 1.0);
    aux.ess = std::max(sst - ssr, 0.0);
    return aux;
}

} // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

double normal_sf(double x) { return 0.5 * std::erfc(x * M_SQRT1_2); }

double t_sf(double x, int df) {
    check_df_x(df, x, "t_sf");
    const double v = df;
    const double ib = reg_inc_beta(v / (v + x * x), v / 2.0, 0.5);
    return x >= 0.0 ? ib / 2.0 : 1.0 - ib / 2.0;
}

double chi2_sf(double x, int df) {
    check_df_x(df, x, "chi2_sf");
    if (x <= 0.0) return 1.0;
    const double a = df / 2.0;
    const double xx = x / 2.0;
    if (xx < a + 1.0) return 1.0 - gamma_p_series(a, xx);
    return gamma_q_cf(a, xx);
}

TestResult breusch_pagan(const std::map<int, double>& residuals,
                         const DesignMatrix& design) {
    const auto aux = auxiliary_regression(residuals, design, "breusch_pagan");
    TestResult result;
    result.test_name = "breusch_pagan";
    result.df_or_n = static_cast<int>(design.p());
    if (aux.degenerate_variance) {
        result.statistic = 0.0;
        result.p_value = 1.0;
        return result;
    }
    result.statistic = static_cast<double>(design.n()) * aux.r2;
    result.p_value = chi2_sf(result.statistic, result.df_or_n);
    return result;
}

TestResult breusch_pagan_ess(const std::map<int, double>& residuals,
                             const DesignMatrix& design) {
    const auto aux = auxiliary_regression(residuals, design, "breusch_pagan_ess");
    TestResult result;
    result.test_name = "breusch_pagan_ess";
    result.df_or_n = static_cast<int>(design.p());
    if (aux.degenerate_variance) {
        result.statistic = 0.0;
        result.p_value = 1.0;
        return result;
    }
    result.statistic = aux.ess / (2.0 * aux.sigma2 * aux.sigma2);
    result.p_value = chi2_sf(result.statistic, result.df_or_n);
    return result;
}

// Royston 1995 (AS R94) coefficient construction, complete samples.
std::vector<double> shapiro_wilk_weights(std::size_t n) {
    if (n < 3 || n > 5000) {
        throw ValidationError("shapiro_wilk: sample size must be in [3, 5000], got " +
                              std::to_string(n));
    }
    const std::size_t n2 = n / 2;
    std::vector<double> a(n2);
    if (n == 3) {
        a[0] = std::sqrt(0.5);
    } else {
        static const double c1[6] = {0.0, 0.221157, -0.147981,
                                     -2.071190, 4.434685, -2.706056};
        static const double c2[6] = {0.0, 0.042981, -0.293762,
                                     -1.752461, 5.682633, -3.582633};
        std::vector<double> m(n2);
        double summ2 = 0.0;
        for (std::size_t i = 0; i < n2; ++i) {
            m[i] = normal_quantile((i + 1 - 0.375) / (n + 0.25));
            summ2 += m[i] * m[i];
        }
        summ2 *= 2.0;
        const double ssumm2 = std::sqrt(summ2);
        const double rsn = 1.0 / std::sqrt(static_cast<double>(n));
        const double a1 = poly(c1, rsn) - m[0] / ssumm2;
        std::size_t i1;
        double fac;
        if (n > 5) {
            const double a2 = poly(c2, rsn) - m[1] / ssumm2;
            fac = std::sqrt((summ2 - 2.0 * m[0] * m[0] - 2.0 * m[1] * m[1]) /
                            (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
            a[0] = a1;
            a[1] = a2;
            i1 = 2;
        } else {
            fac = std::sqrt((summ2 - 2.0 * m[0] * m[0]) / (1.0 - 2.0 * a1 * a1));
            a[0] = a1;
            i1 = 1;
        }
        for (std::size_t i = i1; i < n2; ++i) a[i] = -m[i] / fac;
    }
    // full antisymmetric vector: -a for the lower half, +a mirrored above
    std::vector<double> w(n, 0.0);
    for (std::size_t i = 0; i < n2; ++i) {
        w[i] = -a[i];
        w[n - 1 - i] = a[i];
    }
    return w;
}

TestResult shapiro_wilk(const std::vector<double>& sample) {
    const std::size_t n = sample.size();
    std::vector<double> x = sample;
    for (double v : x) {
        if (!std::isfinite(v)) {
            throw ValidationError("shapiro_wilk: sample has non-finite values");
        }
    }
    const std::vector<double> w = shapiro_wilk_weights(n); // validates n
    std::sort(x.begin(), x.end());
    if (x.back() - x.front() <= 0.0) {
        throw ValidationError("shapiro_wilk: zero-variance sample");
    }

    const double xbar = std::accumulate(x.begin(), x.end(), 0.0) / double(n);
    double ssa = 0.0, ssx = 0.0, sax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - xbar;
        ssa += w[i] * w[i];
        ssx += dx * dx;
        sax += w[i] * dx;
    }
    // 1 - W evaluated without cancellation; W is near 1 for normal data
    const double ssassx = std::sqrt(ssa * ssx);
    double w1 = (ssassx - sax) * (ssassx + sax) / (ssa * ssx);

    TestResult result;
    result.test_name = "shapiro_wilk";
    result.df_or_n = static_cast<int>(n);
    if (!(w1 > 0.0)) { // perfect correlation up to rounding
        result.statistic = 1.0;
        result.p_value = 1.0;
        return result;
    }
    w1 = std::min(w1, 1.0);
    const double W = 1.0 - w1;
    result.statistic = W;

    if (n == 3) {
        const double pi6 = 6.0 / M_PI;
        const double stqr = std::asin(std::sqrt(0.75));
        result.p_value =
            std::clamp(pi6 * (std::asin(std::sqrt(W)) - stqr), 0.0, 1.0);
        return result;
    }

    static const double c3[4] = {0.5440, -0.39978, 0.025054, -6.714e-4};
    static const double c4[4] = {1.3822, -0.77857, 0.062767, -0.0020322};
    static const double c5[4] = {-1.5861, -0.31082, -0.083751, 0.0038915};
    static const double c6[3] = {-0.4803, -0.082676, 0.0030302};
    static const double gc[2] = {-2.273, 0.459};

    const double an = static_cast<double>(n);
    double y = std::log(w1);
    double mu, sigma;
    if (n <= 11) {
        const double gamma = poly(gc, an);
        if (y >= gamma) {
            result.p_value = 1e-99; // W indistinguishable from 1 at this n
            return result;
        }
        y = -std::log(gamma - y);
        mu = poly(c3, an);
        sigma = std::exp(poly(c4, an));
    } else {
        const double lx = std::log(an);
        mu = poly(c5, lx);
        sigma = std::exp(poly(c6, lx));
    }
    result.p_value = std::clamp(normal_sf((y - mu) / sigma), 0.0, 1.0);
    return result;
}

} // namespace ecagr::stats
