#include "latred/mimo.hpp"

#include <atomic>
#include <cmath>
#include <cstring>

#include "latred/linalg.hpp"
#include "latred/parallel.hpp"

namespace latred {

Constellation Constellation::qam(int order) {
    Constellation c;
    if (order == 4) {
        c.order = 4;
        c.rails = 2;
        c.scale = 2.0 / std::sqrt(2.0);
        c.offset = Complex(-1.0, -1.0) / std::sqrt(2.0);
    } else if (order == 16) {
        c.order = 16;
        c.rails = 4;
        c.scale = 2.0 / std::sqrt(10.0);
        c.offset = Complex(-3.0, -3.0) / std::sqrt(10.0);
    } else {
        throw InvalidInputError("Constellation: order must be 4 or 16");
    }
    c.points.resize(static_cast<std::size_t>(c.order));
    for (int re = 0; re < c.rails; ++re)
        for (int im = 0; im < c.rails; ++im)
            c.points[static_cast<std::size_t>(re * c.rails + im)] =
                c.scale * Complex(re, im) + c.offset;
    return c;
}

double Constellation::rail_value(int coord) const {
    return scale * coord + offset.real();
}

int Constellation::coord_from_bits(unsigned bits) const {
    if (rails == 2) return bits ? 0 : 1;
    // Gray order over coordinates 0..3 (most negative rail first):
    // 10, 11, 01, 00.
    static constexpr int table[4] = {3, 2, 0, 1};  // indexed by 2-bit value
    return table[bits & 3u];
}

unsigned Constellation::bits_from_coord(int coord) const {
    if (rails == 2) return coord ? 0u : 1u;
    static constexpr unsigned table[4] = {0b10u, 0b11u, 0b01u, 0b00u};
    return table[coord & 3];
}

std::vector<Complex> modulate(const std::vector<std::uint8_t>& bits,
                              const Constellation& c) {
    const int bps = c.bits_per_symbol();
    if (bits.size() % static_cast<std::size_t>(bps) != 0)
        throw InvalidInputError("modulate: bit count not divisible by bits per symbol");
    const int bpr = c.bits_per_rail();
    std::vector<Complex> out(bits.size() / static_cast<std::size_t>(bps));
    std::size_t p = 0;
    for (auto& sym : out) {
        unsigned br = 0, bi = 0;
        for (int b = 0; b < bpr; ++b) br = (br << 1) | bits[p++];
        for (int b = 0; b < bpr; ++b) bi = (bi << 1) | bits[p++];
        const int mre = c.coord_from_bits(br);
        const int mim = c.coord_from_bits(bi);
        sym = c.scale * Complex(mre, mim) + c.offset;
    }
    return out;
}

static int clip_coord(long long v, int rails) {
    if (v < 0) return 0;
    if (v >= rails) return rails - 1;
    return static_cast<int>(v);
}

static void push_rail_bits(std::vector<std::uint8_t>& bits, unsigned v, int bpr) {
    for (int b = bpr - 1; b >= 0; --b)
        bits.push_back(static_cast<std::uint8_t>((v >> b) & 1u));
}

std::vector<std::uint8_t> hard_demap(const std::vector<Complex>& symbols,
                                     const Constellation& c) {
    const int bpr = c.bits_per_rail();
    std::vector<std::uint8_t> bits;
    bits.reserve(symbols.size() * static_cast<std::size_t>(c.bits_per_symbol()));
    for (const Complex& s : symbols) {
        const int mre =
            clip_coord(std::llround((s.real() - c.offset.real()) / c.scale), c.rails);
        const int mim =
            clip_coord(std::llround((s.imag() - c.offset.imag()) / c.scale), c.rails);
        push_rail_bits(bits, c.bits_from_coord(mre), bpr);
        push_rail_bits(bits, c.bits_from_coord(mim), bpr);
    }
    return bits;
}

ComplexVector transmit(const ComplexMatrix& H, const ComplexVector& x, double snr_db,
                       Rng& rng) {
    if (H.cols() != x.size())
        throw InvalidInputError("transmit: dimension mismatch");
    ComplexVector y = H * x;
    if (std::isinf(snr_db) && snr_db > 0) return y;  // exact noise-free path
    const double sigma2 =
        static_cast<double>(H.rows()) / std::pow(10.0, snr_db / 10.0);
    const double s = std::sqrt(sigma2);
    for (Eigen::Index i = 0; i < y.size(); ++i) y(i) += s * rng.cnormal();
    return y;
}

ComplexMatrix gen_channel(int n, Rng& rng) {
    if (n < 2) throw InvalidInputError("gen_channel: n must be >= 2");
    ComplexMatrix H(n, n);
    for (int i = 0; i < n; ++i)        // row-major fill order (documented)
        for (int j = 0; j < n; ++j) H(i, j) = rng.cnormal();
    return H;
}

LrZfDetector::LrZfDetector(const ComplexMatrix& Q, const GaussianIntMatrix& Z,
                           Constellation c)
    : c_(std::move(c)), n_(Z.n()) {
    if (Q.rows() != n_ || Q.cols() != n_)
        throw InvalidInputError("LrZfDetector: dimension mismatch");
    const GaussianInt det = gaussian_det(Z);
    if (det.is_zero()) throw SingularMatrixError("LrZfDetector: Z is singular");
    q_inv_ = inverse(Q);
    h_ones_ = (Q * Z.to_complex()) * ComplexVector::Ones(n_);
    adj_z_ = gaussian_adjugate(Z);
    det_conj_ = det.conj();
    det_norm_sq_ = det.norm_sq();
}

// round(num / den) for den > 0, halves away from zero.
static BigInt round_div(const BigInt& num, const BigInt& den) {
    BigInt t = num * 2;
    t += (num >= 0 ? den : -den);
    return t / (den * 2);
}

static long long to_ll_clamped(const BigInt& v) {
    static const BigInt lo = std::numeric_limits<long long>::min();
    static const BigInt hi = std::numeric_limits<long long>::max();
    if (v < lo) return std::numeric_limits<long long>::min();
    if (v > hi) return std::numeric_limits<long long>::max();
    return v.convert_to<long long>();
}

std::vector<std::uint8_t> LrZfDetector::detect(const ComplexVector& y) const {
    if (y.size() != n_) throw InvalidInputError("detect: dimension mismatch");
    const ComplexVector y2 = (y - c_.offset * h_ones_) / c_.scale;
    const ComplexVector v = q_inv_ * y2;

    // s = round(Q^{-1} y') on the Gaussian-integer lattice
    std::vector<GaussianInt> s(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
        double re = std::round(v(i).real());
        double im = std::round(v(i).imag());
        if (!std::isfinite(re)) re = 0.0;
        if (!std::isfinite(im)) im = 0.0;
        re = std::clamp(re, -9.0e18, 9.0e18);
        im = std::clamp(im, -9.0e18, 9.0e18);
        s[static_cast<std::size_t>(i)] =
            GaussianInt(static_cast<long long>(re), static_cast<long long>(im));
    }

    // Exact solve of Z z = s over the Gaussian rationals via the adjugate,
    // then rounding to the nearest Gaussian integer and clipping.
    const int bpr = c_.bits_per_rail();
    std::vector<std::uint8_t> bits;
    bits.reserve(static_cast<std::size_t>(n_) *
                 static_cast<std::size_t>(c_.bits_per_symbol()));
    for (int r = 0; r < n_; ++r) {
        GaussianInt num;
        for (int col = 0; col < n_; ++col)
            num += adj_z_(r, col) * s[static_cast<std::size_t>(col)];
        const GaussianInt w = num * det_conj_;
        const int mre = clip_coord(to_ll_clamped(round_div(w.re, det_norm_sq_)), c_.rails);
        const int mim = clip_coord(to_ll_clamped(round_div(w.im, det_norm_sq_)), c_.rails);
        push_rail_bits(bits, c_.bits_from_coord(mre), bpr);
        push_rail_bits(bits, c_.bits_from_coord(mim), bpr);
    }
    return bits;
}

std::vector<std::uint8_t> lr_zf_detect(const ComplexVector& y, const ComplexMatrix& Q,
                                       const GaussianIntMatrix& Z,
                                       const Constellation& c) {
    return LrZfDetector(Q, Z, c).detect(y);
}

BerCurve ber_sweep(const SimConfig& cfg) {
    if (cfg.channels < 1 || cfg.transmissions_per_channel < 1)
        throw InvalidInputError("ber_sweep: counts must be positive");
    if (cfg.snr_points_db.empty())
        throw InvalidInputError("ber_sweep: SNR list must not be empty");
    if (!cfg.run_clll && !cfg.run_proposed)
        throw InvalidInputError("ber_sweep: no algorithm selected");

    const Constellation c = Constellation::qam(cfg.constellation_order);
    const std::size_t ns = cfg.snr_points_db.size();
    const int bps = c.bits_per_symbol();
    const std::size_t bits_per_tx = static_cast<std::size_t>(cfg.n) * bps;

    std::vector<std::atomic<std::uint64_t>> err_clll(ns), err_prop(ns);
    for (auto& a : err_clll) a.store(0);
    for (auto& a : err_prop) a.store(0);
    std::atomic<std::uint64_t> skipped{0};
    std::atomic<std::uint64_t> digest{0};

    parallel_for(static_cast<std::size_t>(cfg.channels), cfg.jobs, [&](std::size_t ci) {
        Rng rng_ch = Rng::substream(cfg.seed, "chan", {ci});
        const ComplexMatrix H = gen_channel(cfg.n, rng_ch);

        std::optional<LrZfDetector> det_clll, det_prop;
        try {
            const CLLLResult cl = preprocess(H, cfg.search);
            if (cfg.run_clll)
                det_clll.emplace(cl.H0, clll_baseline_Z(cl), c);
            if (cfg.run_proposed) {
                const ReductionResult r = search_prereduced(H, cl, cfg.search);
                det_prop.emplace(r.Q, r.Z, c);
            }
        } catch (const std::exception&) {
            skipped.fetch_add(1, std::memory_order_relaxed);
            return;
        }

        std::vector<std::uint64_t> local_c(ns, 0), local_p(ns, 0);
        std::uint64_t local_digest = 0;
        for (int t = 0; t < cfg.transmissions_per_channel; ++t) {
            for (std::size_t si = 0; si < ns; ++si) {
                const auto bits =
                    Rng::substream(cfg.seed, "bits",
                                   {ci, static_cast<std::uint64_t>(t), si})
                        .bits(bits_per_tx);
                const std::vector<Complex> xs = modulate(bits, c);
                ComplexVector x(cfg.n);
                for (int i = 0; i < cfg.n; ++i) x(i) = xs[static_cast<std::size_t>(i)];

                Rng rng_noise = Rng::substream(cfg.seed, "noise",
                                               {ci, static_cast<std::uint64_t>(t), si});
                const ComplexVector y =
                    transmit(H, x, cfg.snr_points_db[si], rng_noise);

                const ComplexVector noise = y - H * x;
                local_digest += fnv1a64(bits.data(), bits.size()) +
                                fnv1a64(noise.data(),
                                        sizeof(Complex) * static_cast<std::size_t>(noise.size()));

                if (det_clll) {
                    const auto rx = det_clll->detect(y);
                    std::uint64_t e = 0;
                    for (std::size_t b = 0; b < bits.size(); ++b) e += bits[b] != rx[b];
                    local_c[si] += e;
                }
                if (det_prop) {
                    const auto rx = det_prop->detect(y);
                    std::uint64_t e = 0;
                    for (std::size_t b = 0; b < bits.size(); ++b) e += bits[b] != rx[b];
                    local_p[si] += e;
                }
            }
        }
        for (std::size_t si = 0; si < ns; ++si) {
            if (det_clll) err_clll[si].fetch_add(local_c[si], std::memory_order_relaxed);
            if (det_prop) err_prop[si].fetch_add(local_p[si], std::memory_order_relaxed);
        }
        digest.fetch_add(local_digest, std::memory_order_relaxed);
    });

    BerCurve curve;
    curve.skipped_channels = skipped.load();
    const std::uint64_t used_channels =
        static_cast<std::uint64_t>(cfg.channels) - curve.skipped_channels;
    const std::uint64_t bits_per_point =
        used_channels * static_cast<std::uint64_t>(cfg.transmissions_per_channel) *
        bits_per_tx;
    auto emit = [&](const char* name, const std::vector<std::atomic<std::uint64_t>>& errs) {
        BerSeries s;
        s.algorithm = name;
        for (std::size_t si = 0; si < ns; ++si) {
            BerPoint p;
            p.snr_db = cfg.snr_points_db[si];
            p.errors = errs[si].load();
            p.bits = bits_per_point;
            p.ber = p.bits ? static_cast<double>(p.errors) / static_cast<double>(p.bits)
                           : 0.0;
            s.points.push_back(p);
        }
        curve.series.push_back(std::move(s));
    };
    if (cfg.run_clll) emit("clll", err_clll);
    if (cfg.run_proposed) emit("proposed", err_prop);
    if (cfg.run_clll) curve.draw_digest_clll = digest.load();
    if (cfg.run_proposed) curve.draw_digest_proposed = digest.load();
    return curve;
}

}  // namespace latred
