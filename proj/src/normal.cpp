#include "esopt/normal.hpp"

#include <cmath>

#include "esopt/errors.hpp"

namespace esopt {

namespace {

// Rational Chebyshev coefficients for erf/erfc from Cody's CALERF packet
// (netlib specfun), preselected for IEEE double.
constexpr double kA[5] = {3.1611237438705656, 113.864154151050156,
                          377.485237685302021, 3209.37758913846947,
                          0.185777706184603153};
constexpr double kB[4] = {23.6012909523441209, 244.024637934444173,
                          1282.61652607737228, 2844.23683343917062};
constexpr double kC[9] = {0.564188496988670089, 8.88314979438837594,
                          66.1191906371416295,  298.635138197400131,
                          881.95222124176909,   1712.04761263407058,
                          2051.07837782607147,  1230.33935479799725,
                          2.15311535474403846e-8};
constexpr double kD[8] = {15.7449261107098347, 117.693950891312499,
                          537.181101862009858, 1621.38957456669019,
                          3290.79923573345963, 4362.61909014324716,
                          3439.36767414372164, 1230.33935480374942};
constexpr double kP[6] = {0.305326634961232344, 0.360344899949804439,
                          0.125781726111229246, 0.0160837851487422766,
                          6.58749161529837803e-4, 0.0163153871373020978};
constexpr double kQ[5] = {2.56852019228982242, 1.87295284992346047,
                          0.527905102951428412, 0.0605183413124413191,
                          0.00233520497626869185};

constexpr double kSqrPi = 0.56418958354775628695;  // 1/sqrt(pi)
constexpr double kThresh = 0.46875;
constexpr double kXSmall = 1.11e-16;
constexpr double kXBig = 26.543;

double trunc16(double y) { return std::trunc(y * 16.0) / 16.0; }

// erfc for y >= kThresh (always positive argument here).
double erfc_positive(double y) {
    double num, den;
    if (y <= 4.0) {
        num = kC[8] * y;
        den = y;
        for (int i = 0; i < 7; ++i) {
            num = (num + kC[i]) * y;
            den = (den + kD[i]) * y;
        }
        const double rat = (num + kC[7]) / (den + kD[7]);
        const double ysq = trunc16(y);
        const double del = (y - ysq) * (y + ysq);
        return std::exp(-ysq * ysq) * std::exp(-del) * rat;
    }
    if (y >= kXBig) return 0.0;
    const double z = 1.0 / (y * y);
    num = kP[5] * z;
    den = z;
    for (int i = 0; i < 4; ++i) {
        num = (num + kP[i]) * z;
        den = (den + kQ[i]) * z;
    }
    double rat = z * (num + kP[4]) / (den + kQ[4]);
    rat = (kSqrPi - rat) / y;
    const double ysq = trunc16(y);
    const double del = (y - ysq) * (y + ysq);
    return std::exp(-ysq * ysq) * std::exp(-del) * rat;
}

// erf on |x| <= kThresh.
double erf_central(double x) {
    const double y = std::abs(x);
    const double z = y > kXSmall ? y * y : 0.0;
    double num = kA[4] * z;
    double den = z;
    for (int i = 0; i < 3; ++i) {
        num = (num + kA[i]) * z;
        den = (den + kB[i]) * z;
    }
    return x * (num + kA[3]) / (den + kB[3]);
}

double erfc_cody(double x) {
    const double y = std::abs(x);
    if (y <= kThresh) return 1.0 - erf_central(x);
    const double r = erfc_positive(y);
    return x < 0.0 ? 2.0 - r : r;
}

constexpr double kInvSqrt2 = 0.7071067811865475244;
constexpr double kInvSqrt2Pi = 0.3989422804014326779;

}  // namespace

double normal_cdf(double x) { return 0.5 * erfc_cody(-x * kInvSqrt2); }

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double normal_inv_cdf(double p) {
    // AS 241, PPND16 (Wichura 1988).
    if (!(p > 0.0 && p < 1.0))
        throw InputError("normal_inv_cdf: p must lie strictly inside (0, 1)");

    static const double a[8] = {
        3.3871328727963666080e0,  1.3314166789178437745e2,
        1.9715909503065514427e3,  1.3731693765509461125e4,
        4.5921953931549871457e4,  6.7265770927008700853e4,
        3.3430575583588128105e4,  2.5090809287301226727e3};
    static const double b[7] = {
        4.2313330701600911252e1, 6.8718700749205790830e2,
        5.3941960214247511077e3, 2.1213794301586595867e4,
        3.9307895800092710610e4, 2.8729085735721942674e4,
        5.2264952788528545610e3};
    static const double c[8] = {
        1.42343711074968357734e0,  4.63033784615654529590e0,
        5.76949722146069140550e0,  3.64784832476320460504e0,
        1.27045825245236838258e0,  2.41780725177450611770e-1,
        2.27238449892691845833e-2, 7.74545014278341407640e-4};
    static const double d[7] = {
        2.05319162663775882187e0,  1.67638483018380384940e0,
        6.89767334985100004550e-1, 1.48103976427480074590e-1,
        1.51986665636164571966e-2, 5.47593808499534494600e-4,
        1.05075007164441684324e-9};
    static const double e[8] = {
        6.65790464350110377720e0,  5.46378491116411436990e0,
        1.78482653991729133580e0,  2.96560571828504891230e-1,
        2.65321895265761230930e-2, 1.24266094738807843860e-3,
        2.71155556874348757815e-5, 2.01033439929228813265e-7};
    static const double f[7] = {
        5.99832206555887937690e-1, 1.36929880922735805310e-1,
        1.48753612908506148525e-2, 7.86869131145613259100e-4,
        1.84631831751005468180e-5, 1.42151175831644588870e-7,
        2.04426310338993978564e-15};

    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        double num = a[7], den = b[6];
        for (int i = 6; i >= 0; --i) num = num * r + a[i];
        for (int i = 5; i >= 0; --i) den = den * r + b[i];
        return q * num / (den * r + 1.0);
    }

    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double x;
    if (r <= 5.0) {
        r -= 1.6;
        double num = c[7], den = d[6];
        for (int i = 6; i >= 0; --i) num = num * r + c[i];
        for (int i = 5; i >= 0; --i) den = den * r + d[i];
        x = num / (den * r + 1.0);
    } else {
        r -= 5.0;
        double num = e[7], den = f[6];
        for (int i = 6; i >= 0; --i) num = num * r + e[i];
        for (int i = 5; i >= 0; --i) den = den * r + f[i];
        x = num / (den * r + 1.0);
    }
    return q < 0.0 ? -x : x;
}

}  // namespace esopt
