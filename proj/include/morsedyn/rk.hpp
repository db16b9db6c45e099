#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

// Embedded Dormand-Prince pairs, 5(4) and 8(5,3), on complex state vectors.
// Coefficients are Hairer's published constants; step-size control follows
// the classic controller of dopri5.f / dop853.f.
namespace morsedyn::rk {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

struct StepStats {
    long n_steps = 0;
    long n_accepted = 0;
    long n_rejected = 0;
    long n_rhs = 0;
};

namespace detail {

inline double error_norm(const cvec& e, const cvec& y0, const cvec& y1, double atol,
                         double rtol) {
    double acc = 0.0;
    const int n = static_cast<int>(e.size());
    for (int i = 0; i < n; ++i) {
        const double sc = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
        const double q = std::abs(e[i]) / sc;
        acc += q * q;
    }
    return std::sqrt(acc / n);
}

} // namespace detail

/// Dormand-Prince 5(4), FSAL.
class Dopri5 {
public:
    static constexpr int order = 5;
    static constexpr double ctrl_alpha = 0.17;  // 1/5 - 0.75*beta
    static constexpr double ctrl_beta = 0.04;

    explicit Dopri5(int n) : k_(7, cvec(n)), ytmp_(n), err_(n) {}

    /// One trial step. k_[0] must hold f(t, y) on entry; on exit k_[6]
    /// holds f(t+h, ynew) (FSAL). Returns the scaled error norm.
    template <class F>
    double attempt(F& f, double t, double h, const cvec& y, cvec& ynew, double atol,
                   double rtol) {
        const int n = static_cast<int>(y.size());
        auto stage = [&](int s, double c, std::initializer_list<double> a) {
            for (int i = 0; i < n; ++i) {
                cplx acc = 0.0;
                int j = 0;
                for (double aj : a) acc += aj * k_[j++][i];
                ytmp_[i] = y[i] + h * acc;
            }
            f(t + c * h, ytmp_, k_[s]);
        };
        stage(1, 1.0 / 5, {1.0 / 5});
        stage(2, 3.0 / 10, {3.0 / 40, 9.0 / 40});
        stage(3, 4.0 / 5, {44.0 / 45, -56.0 / 15, 32.0 / 9});
        stage(4, 8.0 / 9, {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729});
        stage(5, 1.0, {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176,
                       -5103.0 / 18656});
        static constexpr double b[6] = {35.0 / 384,    0.0,           500.0 / 1113,
                                        125.0 / 192,   -2187.0 / 6784, 11.0 / 84};
        for (int i = 0; i < n; ++i) {
            cplx acc = 0.0;
            for (int j = 0; j < 6; ++j) acc += b[j] * k_[j][i];
            ynew[i] = y[i] + h * acc;
        }
        f(t + h, ynew, k_[6]);
        static constexpr double e[7] = {71.0 / 57600,  0.0,        -71.0 / 16695,
                                        71.0 / 1920,   -17253.0 / 339200, 22.0 / 525,
                                        -1.0 / 40};
        for (int i = 0; i < n; ++i) {
            cplx acc = 0.0;
            for (int j = 0; j < 7; ++j) acc += e[j] * k_[j][i];
            err_[i] = h * acc;
        }
        return detail::error_norm(err_, y, ynew, atol, rtol);
    }

    cvec& k_first() { return k_[0]; }
    void accept() { std::swap(k_[0], k_[6]); }  // FSAL hand-off
    static constexpr bool needs_refresh_after_accept = false;
    static constexpr int rhs_per_attempt = 6;

private:
    std::vector<cvec> k_;
    cvec ytmp_, err_;
};

/// Dormand-Prince 8(5,3) from dop853.
class Dop853 {
public:
    static constexpr int order = 8;
    static constexpr double ctrl_alpha = 1.0 / 8.0;
    static constexpr double ctrl_beta = 0.0;

    explicit Dop853(int n) : k_(13, cvec(n)), ytmp_(n), bsum_(n) {}

    template <class F>
    double attempt(F& f, double t, double h, const cvec& y, cvec& ynew, double atol,
                   double rtol) {
        const int n = static_cast<int>(y.size());
        auto stage = [&](int s, double c, std::initializer_list<std::pair<int, double>> a) {
            for (int i = 0; i < n; ++i) {
                cplx acc = 0.0;
                for (const auto& [j, aj] : a) acc += aj * k_[j][i];
                ytmp_[i] = y[i] + h * acc;
            }
            f(t + c * h, ytmp_, k_[s]);
        };

        stage(1, c2, {{0, a21}});
        stage(2, c3, {{0, a31}, {1, a32}});
        stage(3, c4, {{0, a41}, {2, a43}});
        stage(4, c5, {{0, a51}, {2, a53}, {3, a54}});
        stage(5, c6, {{0, a61}, {3, a64}, {4, a65}});
        stage(6, c7, {{0, a71}, {3, a74}, {4, a75}, {5, a76}});
        stage(7, c8, {{0, a81}, {3, a84}, {4, a85}, {5, a86}, {6, a87}});
        stage(8, c9, {{0, a91}, {3, a94}, {4, a95}, {5, a96}, {6, a97}, {7, a98}});
        stage(9, c10,
              {{0, a101}, {3, a104}, {4, a105}, {5, a106}, {6, a107}, {7, a108}, {8, a109}});
        stage(10, c11,
              {{0, a111},
               {3, a114},
               {4, a115},
               {5, a116},
               {6, a117},
               {7, a118},
               {8, a119},
               {9, a1110}});
        stage(11, 1.0,
              {{0, a121},
               {3, a124},
               {4, a125},
               {5, a126},
               {6, a127},
               {7, a128},
               {8, a129},
               {9, a1210},
               {10, a1211}});

        for (int i = 0; i < n; ++i) {
            bsum_[i] = b1 * k_[0][i] + b6 * k_[5][i] + b7 * k_[6][i] + b8 * k_[7][i] +
                       b9 * k_[8][i] + b10 * k_[9][i] + b11 * k_[10][i] + b12 * k_[11][i];
            ynew[i] = y[i] + h * bsum_[i];
        }

        // stretched 5th/3rd-order error estimate
        double err5 = 0.0, err3 = 0.0;
        for (int i = 0; i < n; ++i) {
            const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            const cplx e5 = er1 * k_[0][i] + er6 * k_[5][i] + er7 * k_[6][i] +
                            er8 * k_[7][i] + er9 * k_[8][i] + er10 * k_[9][i] +
                            er11 * k_[10][i] + er12 * k_[11][i];
            const cplx e3 = bsum_[i] - bhh1 * k_[0][i] - bhh2 * k_[8][i] - bhh3 * k_[11][i];
            const double q5 = std::abs(e5) / sc;
            const double q3 = std::abs(e3) / sc;
            err5 += q5 * q5;
            err3 += q3 * q3;
        }
        double deno = err5 + 0.01 * err3;
        if (deno <= 0.0) deno = 1.0;
        return std::abs(h) * err5 * std::sqrt(1.0 / (n * deno));
    }

    cvec& k_first() { return k_[0]; }
    void accept() {}  // not FSAL; driver refreshes k_[0]
    static constexpr bool needs_refresh_after_accept = true;
    static constexpr int rhs_per_attempt = 11;

private:
    std::vector<cvec> k_;
    cvec ytmp_, bsum_;

    // node and weight constants (Hairer, dop853)
    static constexpr double c2 = 0.526001519587677318785587544488e-01;
    static constexpr double c3 = 0.789002279381515978178381316732e-01;
    static constexpr double c4 = 0.118350341907227396726757197510e+00;
    static constexpr double c5 = 0.281649658092772603273242802490e+00;
    static constexpr double c6 = 0.333333333333333333333333333333e+00;
    static constexpr double c7 = 0.25e+00;
    static constexpr double c8 = 0.307692307692307692307692307692e+00;
    static constexpr double c9 = 0.651282051282051282051282051282e+00;
    static constexpr double c10 = 0.6e+00;
    static constexpr double c11 = 0.857142857142857142857142857142e+00;

    static constexpr double a21 = 5.26001519587677318785587544488e-2;
    static constexpr double a31 = 1.97250569845378994544595329183e-2;
    static constexpr double a32 = 5.91751709536136983633785987549e-2;
    static constexpr double a41 = 2.95875854768068491816892993775e-2;
    static constexpr double a43 = 8.87627564304205475450678981324e-2;
    static constexpr double a51 = 2.41365134159266685502369798665e-1;
    static constexpr double a53 = -8.84549479328286085344864962717e-1;
    static constexpr double a54 = 9.24834003261792003115737966543e-1;
    static constexpr double a61 = 3.7037037037037037037037037037e-2;
    static constexpr double a64 = 1.70828608729473871279604482173e-1;
    static constexpr double a65 = 1.25467687566822425016691814123e-1;
    static constexpr double a71 = 3.7109375e-2;
    static constexpr double a74 = 1.70252211019544039314978060272e-1;
    static constexpr double a75 = 6.02165389804559606850219397283e-2;
    static constexpr double a76 = -1.7578125e-2;
    static constexpr double a81 = 3.70920001185047927108779319836e-2;
    static constexpr double a84 = 1.70383925712239993810214054705e-1;
    static constexpr double a85 = 1.07262030446373284651809199168e-1;
    static constexpr double a86 = -1.53194377486244017527936158236e-2;
    static constexpr double a87 = 8.27378916381402288758473766002e-3;
    static constexpr double a91 = 6.24110958716075717114429577812e-1;
    static constexpr double a94 = -3.36089262944694129406857109825e0;
    static constexpr double a95 = -8.68219346841726006818189891453e-1;
    static constexpr double a96 = 2.75920996994467083049415600797e1;
    static constexpr double a97 = 2.01540675504778934086186788979e1;
    static constexpr double a98 = -4.34898841810699588477366255144e1;
    static constexpr double a101 = 4.77662536438264365890433908527e-1;
    static constexpr double a104 = -2.48811461997166764192642586468e0;
    static constexpr double a105 = -5.90290826836842996371446475743e-1;
    static constexpr double a106 = 2.12300514481811942347288949897e1;
    static constexpr double a107 = 1.52792336328824235832596922938e1;
    static constexpr double a108 = -3.32882109689848629194453265587e1;
    static constexpr double a109 = -2.03312017085086261358222928593e-2;
    static constexpr double a111 = -9.3714243008598732571704021658e-1;
    static constexpr double a114 = 5.18637242884406370830023853209e0;
    static constexpr double a115 = 1.09143734899672957818500254654e0;
    static constexpr double a116 = -8.14978701074692612513997267357e0;
    static constexpr double a117 = -1.85200656599969598641566180701e1;
    static constexpr double a118 = 2.27394870993505042818970056734e1;
    static constexpr double a119 = 2.49360555267965238987089396762e0;
    static constexpr double a1110 = -3.0467644718982195003823669022e0;
    static constexpr double a121 = 2.27331014751653820792359768449e0;
    static constexpr double a124 = -1.05344954667372501984066689879e1;
    static constexpr double a125 = -2.00087205822486249909675718444e0;
    static constexpr double a126 = -1.79589318631187989172765950534e1;
    static constexpr double a127 = 2.79488845294199600508499808837e1;
    static constexpr double a128 = -2.85899827713502369474065508674e0;
    static constexpr double a129 = -8.87285693353062954433549289258e0;
    static constexpr double a1210 = 1.23605671757943030647266201528e1;
    static constexpr double a1211 = 6.43392746015763530355970484046e-1;

    static constexpr double b1 = 5.42937341165687622380535766363e-2;
    static constexpr double b6 = 4.45031289275240888144113950566e0;
    static constexpr double b7 = 1.89151789931450038304281599044e0;
    static constexpr double b8 = -5.8012039600105847814672114227e0;
    static constexpr double b9 = 3.1116436695781989440891606237e-1;
    static constexpr double b10 = -1.52160949662516078556178806805e-1;
    static constexpr double b11 = 2.01365400804030348374776537501e-1;
    static constexpr double b12 = 4.47106157277725905176885569043e-2;

    static constexpr double bhh1 = 0.244094488188976377952755905512e+00;
    static constexpr double bhh2 = 0.733846688281611857341361741547e+00;
    static constexpr double bhh3 = 0.220588235294117647058823529412e-01;

    static constexpr double er1 = 0.1312004499419488073250102996e-01;
    static constexpr double er6 = -0.1225156446376204440720569753e+01;
    static constexpr double er7 = -0.4957589496572501915214079952e+00;
    static constexpr double er8 = 0.1664377182454986536961530415e+01;
    static constexpr double er9 = -0.3503288487499736816886487290e+00;
    static constexpr double er10 = 0.3341791187130174790297318841e+00;
    static constexpr double er11 = 0.8192320648511571246570742613e-01;
    static constexpr double er12 = -0.2235530786388629525884427845e-01;
};

/// Hairer-style automatic initial step.
template <class F, class Stepper>
double initial_step(F& f, Stepper& st, double t0, const cvec& y0, double dir, double atol,
                    double rtol, double span) {
    const int n = static_cast<int>(y0.size());
    const cvec& f0 = st.k_first();
    double d0 = 0.0, d1 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double sc = atol + rtol * std::abs(y0[i]);
        const double q0 = std::abs(y0[i]) / sc;
        const double q1 = std::abs(f0[i]) / sc;
        d0 += q0 * q0;
        d1 += q1 * q1;
    }
    d0 = std::sqrt(d0 / n);
    d1 = std::sqrt(d1 / n);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, span);

    cvec y1(n), f1(n);
    for (int i = 0; i < n; ++i) y1[i] = y0[i] + dir * h0 * f0[i];
    f(t0 + dir * h0, y1, f1);
    double d2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double sc = atol + rtol * std::abs(y0[i]);
        const double q = std::abs(f1[i] - f0[i]) / sc;
        d2 += q * q;
    }
    d2 = std::sqrt(d2 / n) / h0;

    const double der = std::max(d1, d2);
    double h1 = der <= 1e-15 ? std::max(1e-6, h0 * 1e-3)
                             : std::pow(0.01 / der, 1.0 / Stepper::order);
    return std::min({100.0 * h0, h1, span});
}

} // namespace morsedyn::rk
