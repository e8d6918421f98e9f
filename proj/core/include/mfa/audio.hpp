#pragma once

#include <complex>
#include <string>
#include <vector>

#include "mfa/mat.hpp"
#include "mfa/wav.hpp"

namespace mfa {

enum class Window { Hann, Hamming, Rect };

struct StftConfig {
    int frame_length = 2048;
    int hop_length = 512;
    Window window = Window::Hann;
};

// Magnitudes below this are clamped before any logarithm.
inline constexpr double kMagnitudeFloor = 1e-10;

// One-sided complex spectrogram, frames x bins, bins = frame_length/2 + 1.
struct Spectrogram {
    std::vector<std::complex<double>> data;
    std::size_t n_frames = 0;
    std::size_t n_bins = 0;
    int sample_rate_hz = 0;
    int frame_length = 0;

    std::complex<double> at(std::size_t frame, std::size_t bin) const { return data[frame * n_bins + bin]; }
    double bin_hz(std::size_t bin) const {
        return static_cast<double>(bin) * sample_rate_hz / static_cast<double>(frame_length);
    }
    double nyquist_hz() const { return 0.5 * sample_rate_hz; }
};

// Number of analysis frames for a signal of n samples: 1 + (n - frame) / hop.
std::size_t frame_count(std::size_t n_samples, const StftConfig& cfg);

Spectrogram stft(const AudioSegment& seg, const StftConfig& cfg);

// Fraction of sign changes per frame, in [0, 1].
std::vector<double> zero_crossing_rate(const AudioSegment& seg, const StftConfig& cfg);

// Per-frame root-mean-square of the raw samples.
std::vector<double> rms_energy(const AudioSegment& seg, const StftConfig& cfg);

// Magnitude-weighted mean frequency per frame (Hz).
std::vector<double> spectral_centroid(const Spectrogram& spec);

// Magnitude-weighted standard deviation around the centroid (Hz).
std::vector<double> spectral_bandwidth(const Spectrogram& spec);

// Smallest frequency whose cumulative magnitude reaches `fraction` of the
// frame total (Hz).
std::vector<double> spectral_rolloff(const Spectrogram& spec, double fraction = 0.85);

// Per octave-spaced sub-band: mean dB of the top quantile of bin magnitudes
// minus mean dB of the bottom quantile (quantile 0.02 of band bins, min 1).
// Returns frames x n_bands.
Mat spectral_contrast(const Spectrogram& spec, int n_bands = 7);

// Log-mel filterbank energies (Slaney-style mel scale, fmin 0, fmax
// Nyquist) followed by an orthonormal DCT-II. Returns frames x n_coeffs.
Mat mfcc(const Spectrogram& spec, int n_mels = 128, int n_coeffs = 20);

// Bin power folded onto n_chroma equal pitch classes per octave,
// max-normalized per frame. Returns frames x n_chroma.
Mat chroma_stft(const Spectrogram& spec, int n_chroma = 6);

// Per-frame summary of the unnormalized chroma fold: column 0 total class
// energy, column 1 peak class energy. Returns frames x 2.
Mat chroma_fold_summary(const Spectrogram& spec, int n_chroma = 6);

// Projection of L1-normalized chroma onto the fifth, minor-third and
// major-third interval circles (radii 1, 1, 0.5); sin/cos pair per circle.
// Returns frames x 6.
Mat tonnetz(const Mat& chroma);

// Ordered list of base (per-frame) feature names; the emitted vector holds
// mean and std of each, in manifest order.
struct FeatureManifest {
    std::vector<std::string> base_names;

    // The canonical 46-entry layout: zcr, chroma_stft.0-5, tonnetz.0-5,
    // mfcc.0-19, rms, centroid, bandwidth, contrast.0-6, rolloff,
    // chroma_energy, chroma_peak.
    static FeatureManifest canonical();

    // base names expanded to <name>.mean, <name>.std pairs.
    std::vector<std::string> full_names() const;
};

struct FeatureVector {
    std::vector<double> values;       // 2 x base_names.size()
    std::vector<std::string> names;   // aligned full names
};

// Computes every family once and emits (mean, std) per manifest entry.
// A NaN in any family series aborts with the family named.
FeatureVector extract_features(const AudioSegment& seg, const StftConfig& cfg,
                               const FeatureManifest& manifest);

}  // namespace mfa
