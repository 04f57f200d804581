#include "magbound/specrad.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <mutex>
#include <stdexcept>

namespace magbound {

namespace {

constexpr int kFftThreshold = 256;
std::mutex g_fftw_mutex;  // planner calls are not reentrant

double widen_down(double x, int ulps) {
    for (int i = 0; i < ulps; ++i) x = std::nextafter(x, -std::numeric_limits<double>::infinity());
    return x;
}

double widen_up(double x, int ulps) {
    for (int i = 0; i < ulps; ++i) x = std::nextafter(x, std::numeric_limits<double>::infinity());
    return x;
}

}  // namespace

struct OperatorGrid::FftPlan {
    int L = 0;
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
    std::vector<std::complex<double>> symbol_hat;

    FftPlan(const std::vector<double>& symbol, int n) : L(2 * n) {
        double* in = fftw_alloc_real(L);
        fftw_complex* out = fftw_alloc_complex(L / 2 + 1);
        {
            std::lock_guard<std::mutex> lock(g_fftw_mutex);
            forward = fftw_plan_dft_r2c_1d(L, in, out, FFTW_ESTIMATE);
            backward = fftw_plan_dft_c2r_1d(L, out, in, FFTW_ESTIMATE);
        }
        std::fill(in, in + L, 0.0);
        std::copy(symbol.begin(), symbol.end(), in);
        fftw_execute_dft_r2c(forward, in, out);
        symbol_hat.resize(L / 2 + 1);
        for (int k = 0; k <= L / 2; ++k) symbol_hat[k] = {out[k][0], out[k][1]};
        fftw_free(in);
        fftw_free(out);
    }
    ~FftPlan() {
        std::lock_guard<std::mutex> lock(g_fftw_mutex);
        fftw_destroy_plan(forward);
        fftw_destroy_plan(backward);
    }
    FftPlan(const FftPlan&) = delete;
    FftPlan& operator=(const FftPlan&) = delete;
};

OperatorGrid OperatorGrid::toeplitz(const std::function<double(double)>& kernel, double right_at_zero,
                                    double left_at_zero, int n) {
    if (n < 2) throw std::invalid_argument("discretize: n must be at least 2");
    OperatorGrid g;
    g.n_ = n;
    g.toeplitz_ = true;
    g.scale_ = 1.0 / n;
    g.symbol_.resize(2 * n - 1);
    for (int d = -(n - 1); d <= n - 1; ++d)
        g.symbol_[d + n - 1] = d == 0 ? 0.5 * (right_at_zero + left_at_zero) : kernel(static_cast<double>(d) / n);
    g.finish();
    if (n >= kFftThreshold) g.fft_ = std::make_shared<FftPlan>(g.symbol_, n);
    return g;
}

OperatorGrid OperatorGrid::general(const std::function<double(double, double)>& kernel, int n) {
    if (n < 2) throw std::invalid_argument("discretize: n must be at least 2");
    OperatorGrid g;
    g.n_ = n;
    g.scale_ = 1.0 / n;
    g.finish();
    g.matrix_.resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.matrix_[static_cast<std::size_t>(i) * n + j] = kernel(g.nodes_[i], g.nodes_[j]);
    g.finish();
    return g;
}

OperatorGrid OperatorGrid::from_matrix(int n, std::vector<double> entries) {
    if (n < 1 || entries.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("from_matrix: size mismatch");
    OperatorGrid g;
    g.n_ = n;
    g.scale_ = 1.0;
    g.matrix_ = std::move(entries);
    g.finish();
    return g;
}

void OperatorGrid::finish() {
    nodes_.resize(n_);
    for (int i = 0; i < n_; ++i) nodes_[i] = (i + 0.5) / n_;
    const auto& vals = toeplitz_ ? symbol_ : matrix_;
    if (vals.empty()) return;
    for (double x : vals)
        if (!(x >= 0) || !std::isfinite(x)) throw std::invalid_argument("discretize: invalid kernel sample");
    auto [mn, mx] = std::minmax_element(vals.begin(), vals.end());
    kmin_ = *mn * scale_ * n_;
    kmax_ = *mx * scale_ * n_;
}

double OperatorGrid::entry(int i, int j) const {
    if (toeplitz_) return symbol_[j - i + n_ - 1] * scale_;
    return matrix_[static_cast<std::size_t>(i) * n_ + j] * scale_;
}

std::vector<double> OperatorGrid::dense() const {
    std::vector<double> out(static_cast<std::size_t>(n_) * n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) out[static_cast<std::size_t>(i) * n_ + j] = entry(i, j);
    return out;
}

void OperatorGrid::apply(const std::vector<double>& v, std::vector<double>& out) const {
    const int n = n_;
    out.assign(n, 0.0);
    if (toeplitz_ && fft_) {
        const int L = fft_->L;
        double* buf = fftw_alloc_real(L);
        fftw_complex* spec = fftw_alloc_complex(L / 2 + 1);
        std::fill(buf, buf + L, 0.0);
        for (int j = 0; j < n; ++j) buf[j] = v[n - 1 - j];
        fftw_execute_dft_r2c(fft_->forward, buf, spec);
        for (int k = 0; k <= L / 2; ++k) {
            std::complex<double> z(spec[k][0], spec[k][1]);
            z *= fft_->symbol_hat[k];
            spec[k][0] = z.real();
            spec[k][1] = z.imag();
        }
        fftw_execute_dft_c2r(fft_->backward, spec, buf);
        const double s = scale_ / L;
        for (int i = 0; i < n; ++i) out[i] = std::max(0.0, buf[2 * n - 2 - i] * s);
        fftw_free(buf);
        fftw_free(spec);
        return;
    }
    for (int i = 0; i < n; ++i) {
        const double* row = toeplitz_ ? symbol_.data() + (n - 1 - i) : matrix_.data() + static_cast<std::size_t>(i) * n;
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += row[j] * v[j];
        out[i] = acc * scale_;
    }
}

OperatorGrid discretize(const TwoSidedKernel& kernel, int n) {
    return OperatorGrid::toeplitz([&](double t) { return kernel(t); }, kernel.right_limit_at_zero(),
                                  kernel.left_limit_at_zero(), n);
}

RadiusResult power_iteration_hopf(const OperatorGrid& grid, double tol, int max_iter, bool keep_history) {
    const int n = grid.n();
    if (max_iter < 0) max_iter = 10 * n;
    const int ulps = grid.is_toeplitz() && n >= kFftThreshold ? 64 : 2;
    RadiusResult res;
    res.n = n;
    res.hopf_rate_applicable = grid.kernel_min() > 0;
    if (!res.hopf_rate_applicable) res.warning = "kernel not bounded below by a positive constant; Hopf rate bound inapplicable";
    std::vector<double> v(n, 1.0), w;
    double lo = 0, hi = std::numeric_limits<double>::infinity();
    for (int it = 0; it < max_iter; ++it) {
        grid.apply(v, w);
        double wmax = *std::max_element(w.begin(), w.end());
        if (wmax == 0.0) {
            res.radius = res.lo = res.hi = 0.0;
            res.iterations = it + 1;
            res.converged = true;
            res.eigvec.assign(n, 0.0);
            if (keep_history) res.history.emplace_back(0.0, 0.0);
            return res;
        }
        double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
        for (int i = 0; i < n; ++i) {
            if (v[i] == 0.0) {
                if (w[i] > 0.0) rmax = std::numeric_limits<double>::infinity();
                continue;
            }
            double r = w[i] / v[i];
            rmin = std::min(rmin, r);
            rmax = std::max(rmax, r);
        }
        if (!std::isfinite(rmin)) rmin = 0.0;
        double raw_lo = std::max(0.0, widen_down(rmin, ulps)), raw_hi = widen_up(rmax, ulps);
        if (keep_history) res.history.emplace_back(raw_lo, raw_hi);
        double nlo = std::max(lo, raw_lo), nhi = std::min(hi, raw_hi);
        if (nlo <= nhi) {
            lo = nlo;
            hi = nhi;
        } else {
            lo = raw_lo;
            hi = raw_hi;
        }
        for (int i = 0; i < n; ++i) v[i] = w[i] / wmax;
        res.iterations = it + 1;
        if (hi - lo <= tol) {
            res.converged = true;
            break;
        }
    }
    if (!res.converged) res.warning = "bracket did not reach tolerance within the iteration budget";
    res.lo = lo;
    res.hi = hi;
    res.radius = 0.5 * (lo + hi);
    res.eigvec = std::move(v);
    return res;
}

Rational convolution_radius(const TwoSidedKernel& kernel) {
    if (!kernel.convolution_type()) throw std::invalid_argument("convolution_radius: kernel is not of convolution type");
    return kernel.upper_poly().integral(0, 1);
}

RadiusResult radius_refined(const std::function<OperatorGrid(int)>& make_grid, double tol, int n0, int max_n) {
    const double inner_tol = tol / 16;
    RadiusResult coarse = power_iteration_hopf(make_grid(n0), inner_tol);
    RadiusResult fine;
    double prev_ext = std::numeric_limits<double>::quiet_NaN();
    double ext = coarse.radius;
    bool converged = false;
    std::string warning = coarse.warning;
    for (int n = 2 * n0; n <= max_n; n *= 2) {
        fine = power_iteration_hopf(make_grid(n), inner_tol);
        if (!fine.warning.empty()) warning = fine.warning;
        ext = (4.0 * fine.radius - coarse.radius) / 3.0;
        if (!std::isnan(prev_ext) && std::fabs(ext - prev_ext) <= tol) {
            converged = true;
            break;
        }
        prev_ext = ext;
        coarse = std::move(fine);
    }
    if (fine.n == 0) fine = coarse;
    RadiusResult out = std::move(fine);
    double err = std::isnan(prev_ext) ? std::fabs(ext - out.radius) : std::fabs(ext - prev_ext);
    out.radius = ext;
    out.lo = ext - err - (out.hi - out.lo);
    out.hi = ext + err + (out.hi - out.lo);
    out.converged = converged;
    out.warning = converged ? std::string() : (warning.empty() ? "refinement budget exhausted" : warning);
    return out;
}

std::vector<double> local_radius_sequence(const OperatorGrid& grid, int steps) {
    const int n = grid.n();
    std::vector<double> v(n, 1.0), w, out;
    double log_scale = 0.0;
    for (int k = 1; k <= steps; ++k) {
        grid.apply(v, w);
        double s = 0.0, mx = 0.0;
        for (double x : w) {
            s += x;
            mx = std::max(mx, x);
        }
        if (mx == 0.0) {
            out.resize(steps, 0.0);
            return out;
        }
        out.push_back(std::exp((log_scale + std::log(s / n)) / k));
        log_scale += std::log(mx);
        for (int i = 0; i < n; ++i) v[i] = w[i] / mx;
    }
    return out;
}

}  // namespace magbound
