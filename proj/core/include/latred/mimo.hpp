#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "latred/reducer.hpp"
#include "latred/rng.hpp"
#include "latred/types.hpp"

namespace latred {

// Square QAM constellation with unit average energy and an affine map onto
// the Gaussian integers: every point p satisfies (p - offset) / scale in
// Z + jZ, with per-rail integer coordinates in {0 .. rails-1}.
//
// Bit mapping is Gray-coded per rail, most positive rail first:
//   1 bit/rail  (4-QAM):   0 -> +1,  1 -> -1        (times 1/sqrt(2))
//   2 bits/rail (16-QAM):  00 -> +3, 01 -> +1, 11 -> -1, 10 -> -3
//                                                   (times 1/sqrt(10))
// A symbol consumes its real-rail bits first, then its imaginary-rail bits.
struct Constellation {
    int order = 0;  // M, one of {4, 16}
    int rails = 0;  // sqrt(M) levels per rail
    double scale = 0.0;
    Complex offset;
    std::vector<Complex> points;  // indexed by re_coord * rails + im_coord

    static Constellation qam(int order);

    int bits_per_symbol() const { return rails == 2 ? 2 : 4; }
    int bits_per_rail() const { return rails == 2 ? 1 : 2; }

    double rail_value(int coord) const;
    int coord_from_bits(unsigned bits) const;
    unsigned bits_from_coord(int coord) const;
};

std::vector<Complex> modulate(const std::vector<std::uint8_t>& bits,
                              const Constellation& c);

// Nearest-point demapping back to bits (exact on noise-free constellation
// points).
std::vector<std::uint8_t> hard_demap(const std::vector<Complex>& symbols,
                                     const Constellation& c);

// y = H x + n with i.i.d. circular complex Gaussian noise of per-entry
// variance sigma^2 = N / 10^{snr_dB / 10} (total unit-energy signal power
// over per-antenna noise). snr_dB = +inf gives the exact noise-free path.
ComplexVector transmit(const ComplexMatrix& H, const ComplexVector& x,
                       double snr_db, Rng& rng);

ComplexMatrix gen_channel(int n, Rng& rng);

// Lattice-reduction aided Zero-Forcing detector for a fixed factorization
// H = Q Z: shift/scale removal, s = round(Q^{-1} y'), exact solve of
// Z z = s over the Gaussian rationals, rounding and clipping to the
// constellation range.
class LrZfDetector {
  public:
    LrZfDetector(const ComplexMatrix& Q, const GaussianIntMatrix& Z,
                 Constellation c);

    std::vector<std::uint8_t> detect(const ComplexVector& y) const;

  private:
    ComplexMatrix q_inv_;
    ComplexVector h_ones_;  // H * 1
    GaussianIntMatrix adj_z_;
    GaussianInt det_conj_;
    BigInt det_norm_sq_;
    Constellation c_;
    int n_;
};

std::vector<std::uint8_t> lr_zf_detect(const ComplexVector& y, const ComplexMatrix& Q,
                                       const GaussianIntMatrix& Z,
                                       const Constellation& c);

struct SimConfig {
    int n = 4;
    std::vector<double> snr_points_db;
    int channels = 1000;
    int transmissions_per_channel = 100;
    int constellation_order = 4;
    std::uint64_t seed = 0;
    bool run_clll = true;
    bool run_proposed = true;
    SearchConfig search;
    int jobs = 1;
};

struct BerPoint {
    double snr_db = 0.0;
    std::uint64_t errors = 0;
    std::uint64_t bits = 0;
    double ber = 0.0;
};

struct BerSeries {
    std::string algorithm;
    std::vector<BerPoint> points;
};

struct BerCurve {
    std::vector<BerSeries> series;
    std::uint64_t skipped_channels = 0;
    // Digest of the (bits, noise) stream each algorithm consumed; equal
    // values certify common random numbers across algorithms.
    std::uint64_t draw_digest_clll = 0;
    std::uint64_t draw_digest_proposed = 0;
};

// Monte-Carlo BER sweep with common random numbers across algorithms:
// channels are independent work units, each with deterministic substreams
// keyed by (seed, purpose, channel, transmission, snr index).
BerCurve ber_sweep(const SimConfig& cfg);

}  // namespace latred
