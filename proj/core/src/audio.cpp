#include "mfa/audio.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "mfa/errors.hpp"
#include "mfa/fft.hpp"
#include "mfa/stats_util.hpp"

namespace mfa {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kC0Hz = 16.351597831287414;  // pitch class reference (C0)
constexpr double kContrastQuantile = 0.02;
constexpr double kContrastFminHz = 200.0;

void validate_cfg(const StftConfig& cfg) {
    if (cfg.frame_length < 2) throw ValidationError("stft: frame_length must be >= 2");
    if (cfg.hop_length <= 0 || cfg.hop_length > cfg.frame_length)
        throw ValidationError("stft: need 0 < hop <= frame");
}

void validate_segment(const AudioSegment& seg, const StftConfig& cfg) {
    if (seg.samples.empty()) throw ValidationError("audio: empty signal");
    if (seg.sample_rate_hz <= 0) throw ValidationError("audio: sample rate must be positive");
    if (seg.samples.size() < static_cast<std::size_t>(cfg.frame_length))
        throw ValidationError("audio: signal shorter than one frame");
    for (double s : seg.samples) {
        if (!std::isfinite(s)) throw ValidationError("audio: non-finite sample");
    }
}

std::vector<double> make_window(const StftConfig& cfg) {
    const int n = cfg.frame_length;
    std::vector<double> w(n, 1.0);
    switch (cfg.window) {
        case Window::Rect: break;
        case Window::Hann:
            for (int i = 0; i < n; ++i) w[i] = 0.5 - 0.5 * std::cos(2.0 * kPi * i / n);
            break;
        case Window::Hamming:
            for (int i = 0; i < n; ++i) w[i] = 0.54 - 0.46 * std::cos(2.0 * kPi * i / n);
            break;
    }
    return w;
}

double to_db(double magnitude) { return 20.0 * std::log10(std::max(magnitude, kMagnitudeFloor)); }

// Slaney-style mel scale: linear below 1 kHz, logarithmic above.
double hz_to_mel(double hz) {
    constexpr double f_sp = 200.0 / 3.0;
    constexpr double min_log_hz = 1000.0;
    const double min_log_mel = min_log_hz / f_sp;
    const double logstep = std::log(6.4) / 27.0;
    if (hz < min_log_hz) return hz / f_sp;
    return min_log_mel + std::log(hz / min_log_hz) / logstep;
}

double mel_to_hz(double mel) {
    constexpr double f_sp = 200.0 / 3.0;
    constexpr double min_log_hz = 1000.0;
    const double min_log_mel = min_log_hz / f_sp;
    const double logstep = std::log(6.4) / 27.0;
    if (mel < min_log_mel) return mel * f_sp;
    return min_log_hz * std::exp(logstep * (mel - min_log_mel));
}

// Triangular mel filterbank with Slaney area normalization, n_mels x n_bins.
Mat mel_filterbank(int n_mels, std::size_t n_bins, int sample_rate, int frame_length) {
    const double fmax = 0.5 * sample_rate;
    const double mel_max = hz_to_mel(fmax);
    std::vector<double> freqs(n_mels + 2);
    for (int m = 0; m < n_mels + 2; ++m) {
        freqs[m] = mel_to_hz(mel_max * static_cast<double>(m) / static_cast<double>(n_mels + 1));
    }
    Mat fb(n_mels, n_bins, 0.0);
    for (int m = 0; m < n_mels; ++m) {
        const double lo = freqs[m], center = freqs[m + 1], hi = freqs[m + 2];
        const double norm = (hi - lo) > 0.0 ? 2.0 / (hi - lo) : 0.0;
        for (std::size_t b = 0; b < n_bins; ++b) {
            const double f = static_cast<double>(b) * sample_rate / frame_length;
            double w = 0.0;
            if (f >= lo && f <= hi) {
                if (f <= center && center > lo) w = (f - lo) / (center - lo);
                else if (f > center && hi > center) w = (hi - f) / (hi - center);
            }
            fb(m, b) = w * norm;
        }
    }
    return fb;
}

// Orthonormal DCT-II coefficient table, n_out x n_in.
Mat dct_table(int n_out, int n_in) {
    Mat t(n_out, n_in);
    for (int k = 0; k < n_out; ++k) {
        const double scale = k == 0 ? std::sqrt(1.0 / n_in) : std::sqrt(2.0 / n_in);
        for (int m = 0; m < n_in; ++m) {
            t(k, m) = scale * std::cos(kPi * k * (2.0 * m + 1.0) / (2.0 * n_in));
        }
    }
    return t;
}

// Unnormalized chroma fold of bin power, frames x n_chroma. Bin 0 (DC) is
// excluded since it carries no pitch class.
Mat chroma_fold(const Spectrogram& spec, int n_chroma) {
    if (n_chroma < 2) throw ValidationError("chroma: need at least 2 pitch classes");
    Mat out(spec.n_frames, n_chroma, 0.0);
    std::vector<int> bin_class(spec.n_bins, -1);
    for (std::size_t b = 1; b < spec.n_bins; ++b) {
        const double f = spec.bin_hz(b);
        const double cls = std::llround(n_chroma * std::log2(f / kC0Hz));
        bin_class[b] = static_cast<int>(((static_cast<long long>(cls) % n_chroma) + n_chroma) % n_chroma);
    }
    for (std::size_t t = 0; t < spec.n_frames; ++t) {
        for (std::size_t b = 1; b < spec.n_bins; ++b) {
            const double mag = std::abs(spec.at(t, b));
            out(t, bin_class[b]) += mag * mag;
        }
    }
    return out;
}

}  // namespace

std::size_t frame_count(std::size_t n_samples, const StftConfig& cfg) {
    validate_cfg(cfg);
    if (n_samples < static_cast<std::size_t>(cfg.frame_length)) return 0;
    return 1 + (n_samples - static_cast<std::size_t>(cfg.frame_length)) /
                   static_cast<std::size_t>(cfg.hop_length);
}

Spectrogram stft(const AudioSegment& seg, const StftConfig& cfg) {
    validate_cfg(cfg);
    validate_segment(seg, cfg);
    const std::size_t frames = frame_count(seg.samples.size(), cfg);
    const std::vector<double> window = make_window(cfg);

    Spectrogram spec;
    spec.n_frames = frames;
    spec.n_bins = static_cast<std::size_t>(cfg.frame_length) / 2 + 1;
    spec.sample_rate_hz = seg.sample_rate_hz;
    spec.frame_length = cfg.frame_length;
    spec.data.resize(frames * spec.n_bins);

    std::vector<double> frame(cfg.frame_length);
    for (std::size_t t = 0; t < frames; ++t) {
        const std::size_t start = t * static_cast<std::size_t>(cfg.hop_length);
        for (int i = 0; i < cfg.frame_length; ++i) frame[i] = seg.samples[start + i] * window[i];
        const auto bins = rfft(frame);
        std::copy(bins.begin(), bins.end(), spec.data.begin() + t * spec.n_bins);
    }
    return spec;
}

std::vector<double> zero_crossing_rate(const AudioSegment& seg, const StftConfig& cfg) {
    validate_cfg(cfg);
    validate_segment(seg, cfg);
    const std::size_t frames = frame_count(seg.samples.size(), cfg);
    std::vector<double> out(frames);
    for (std::size_t t = 0; t < frames; ++t) {
        const std::size_t start = t * static_cast<std::size_t>(cfg.hop_length);
        std::size_t crossings = 0;
        for (int i = 0; i + 1 < cfg.frame_length; ++i) {
            const bool a = seg.samples[start + i] >= 0.0;
            const bool b = seg.samples[start + i + 1] >= 0.0;
            if (a != b) ++crossings;
        }
        out[t] = static_cast<double>(crossings) / static_cast<double>(cfg.frame_length - 1);
    }
    return out;
}

std::vector<double> rms_energy(const AudioSegment& seg, const StftConfig& cfg) {
    validate_cfg(cfg);
    validate_segment(seg, cfg);
    const std::size_t frames = frame_count(seg.samples.size(), cfg);
    std::vector<double> out(frames);
    for (std::size_t t = 0; t < frames; ++t) {
        const std::size_t start = t * static_cast<std::size_t>(cfg.hop_length);
        double acc = 0.0;
        for (int i = 0; i < cfg.frame_length; ++i) {
            const double s = seg.samples[start + i];
            acc += s * s;
        }
        out[t] = std::sqrt(acc / cfg.frame_length);
    }
    return out;
}

std::vector<double> spectral_centroid(const Spectrogram& spec) {
    std::vector<double> out(spec.n_frames, 0.0);
    for (std::size_t t = 0; t < spec.n_frames; ++t) {
        double num = 0.0, den = 0.0;
        for (std::size_t b = 0; b < spec.n_bins; ++b) {
            const double mag = std::abs(spec.at(t, b));
            num += spec.bin_hz(b) * mag;
            den += mag;
        }
        out[t] = den > 0.0 ? num / den : 0.0;
    }
    return out;
}

std::vector<double> spectral_bandwidth(const Spectrogram& spec) {
    const std::vector<double> centroid = spectral_centroid(spec);
    std::vector<double> out(spec.n_frames, 0.0);
    for (std::size_t t = 0; t < spec.n_frames; ++t) {
        double num = 0.0, den = 0.0;
        for (std::size_t b = 0; b < spec.n_bins; ++b) {
            const double mag = std::abs(spec.at(t, b));
            const double d = spec.bin_hz(b) - centroid[t];
            num += mag * d * d;
            den += mag;
        }
        out[t] = den > 0.0 ? std::sqrt(num / den) : 0.0;
    }
    return out;
}

std::vector<double> spectral_rolloff(const Spectrogram& spec, double fraction) {
    if (fraction <= 0.0 || fraction > 1.0) throw ValidationError("spectral_rolloff: fraction must be in (0,1]");
    std::vector<double> out(spec.n_frames, 0.0);
    for (std::size_t t = 0; t < spec.n_frames; ++t) {
        double total = 0.0;
        for (std::size_t b = 0; b < spec.n_bins; ++b) total += std::abs(spec.at(t, b));
        if (total <= 0.0) {
            out[t] = 0.0;
            continue;
        }
        const double threshold = fraction * total;
        double cum = 0.0;
        for (std::size_t b = 0; b < spec.n_bins; ++b) {
            cum += std::abs(spec.at(t, b));
            if (cum >= threshold) {
                out[t] = spec.bin_hz(b);
                break;
            }
        }
    }
    return out;
}

Mat spectral_contrast(const Spectrogram& spec, int n_bands) {
    if (n_bands < 1) throw ValidationError("spectral_contrast: need at least 1 band");
    const double nyquist = spec.nyquist_hz();

    // Octave-spaced edges: [0, fmin), doublings of fmin, last band ends at Nyquist.
    std::vector<double> edges(n_bands + 1);
    edges[0] = 0.0;
    for (int b = 1; b < n_bands; ++b) edges[b] = kContrastFminHz * std::pow(2.0, b - 1);
    edges[n_bands] = nyquist;

    std::vector<std::vector<std::size_t>> band_bins(n_bands);
    for (std::size_t b = 0; b < spec.n_bins; ++b) {
        const double f = spec.bin_hz(b);
        for (int k = 0; k < n_bands; ++k) {
            const bool last = k == n_bands - 1;
            if (f >= edges[k] && (f < edges[k + 1] || (last && f <= edges[k + 1]))) {
                band_bins[k].push_back(b);
                break;
            }
        }
    }

    Mat out(spec.n_frames, n_bands, 0.0);
    std::vector<double> mags;
    for (std::size_t t = 0; t < spec.n_frames; ++t) {
        for (int k = 0; k < n_bands; ++k) {
            const auto& bins = band_bins[k];
            if (bins.empty()) continue;
            mags.clear();
            for (std::size_t b : bins) mags.push_back(std::abs(spec.at(t, b)));
            std::sort(mags.begin(), mags.end());
            const std::size_t q = std::max<std::size_t>(
                1, static_cast<std::size_t>(kContrastQuantile * static_cast<double>(mags.size())));
            double bottom = 0.0, top = 0.0;
            for (std::size_t i = 0; i < q; ++i) {
                bottom += to_db(mags[i]);
                top += to_db(mags[mags.size() - 1 - i]);
            }
            out(t, k) = (top - bottom) / static_cast<double>(q);
        }
    }
    return out;
}

Mat mfcc(const Spectrogram& spec, int n_mels, int n_coeffs) {
    if (n_mels < 1 || n_coeffs < 1 || n_coeffs > n_mels)
        throw ValidationError("mfcc: need 1 <= n_coeffs <= n_mels");
    const Mat fb = mel_filterbank(n_mels, spec.n_bins, spec.sample_rate_hz, spec.frame_length);
    const Mat dct = dct_table(n_coeffs, n_mels);

    Mat out(spec.n_frames, n_coeffs, 0.0);
    std::vector<double> power(spec.n_bins), logmel(n_mels);
    for (std::size_t t = 0; t < spec.n_frames; ++t) {
        for (std::size_t b = 0; b < spec.n_bins; ++b) {
            const double mag = std::abs(spec.at(t, b));
            power[b] = mag * mag;
        }
        for (int m = 0; m < n_mels; ++m) {
            double acc = 0.0;
            for (std::size_t b = 0; b < spec.n_bins; ++b) acc += fb(m, b) * power[b];
            logmel[m] = std::log(std::max(acc, kMagnitudeFloor));
        }
        for (int k = 0; k < n_coeffs; ++k) {
            double acc = 0.0;
            for (int m = 0; m < n_mels; ++m) acc += dct(k, m) * logmel[m];
            out(t, k) = acc;
        }
    }
    return out;
}

Mat chroma_stft(const Spectrogram& spec, int n_chroma) {
    Mat fold = chroma_fold(spec, n_chroma);
    for (std::size_t t = 0; t < fold.rows(); ++t) {
        double peak = 0.0;
        for (std::size_t c = 0; c < fold.cols(); ++c) peak = std::max(peak, fold(t, c));
        if (peak > 0.0) {
            for (std::size_t c = 0; c < fold.cols(); ++c) fold(t, c) /= peak;
        }
    }
    return fold;
}

Mat chroma_fold_summary(const Spectrogram& spec, int n_chroma) {
    const Mat fold = chroma_fold(spec, n_chroma);
    Mat out(fold.rows(), 2, 0.0);
    for (std::size_t t = 0; t < fold.rows(); ++t) {
        double total = 0.0, peak = 0.0;
        for (std::size_t c = 0; c < fold.cols(); ++c) {
            total += fold(t, c);
            peak = std::max(peak, fold(t, c));
        }
        out(t, 0) = total;
        out(t, 1) = peak;
    }
    return out;
}

Mat tonnetz(const Mat& chroma) {
    const std::size_t n = chroma.cols();
    if (n < 2) throw ValidationError("tonnetz: chroma must have at least 2 classes");
    // Interval circles in semitone steps, scaled to the class count.
    const struct {
        double interval;
        double radius;
    } circles[3] = {{7.0, 1.0}, {3.0, 1.0}, {4.0, 0.5}};

    Mat out(chroma.rows(), 6, 0.0);
    for (std::size_t t = 0; t < chroma.rows(); ++t) {
        double total = 0.0;
        for (std::size_t p = 0; p < n; ++p) total += chroma(t, p);
        if (total <= 0.0) continue;
        for (int c = 0; c < 3; ++c) {
            double s = 0.0, co = 0.0;
            for (std::size_t p = 0; p < n; ++p) {
                const double w = chroma(t, p) / total;
                const double angle = 2.0 * kPi * circles[c].interval * static_cast<double>(p) /
                                     static_cast<double>(n);
                s += w * std::sin(angle);
                co += w * std::cos(angle);
            }
            out(t, 2 * c) = circles[c].radius * s;
            out(t, 2 * c + 1) = circles[c].radius * co;
        }
    }
    return out;
}

FeatureManifest FeatureManifest::canonical() {
    FeatureManifest m;
    m.base_names.push_back("zcr");
    for (int i = 0; i < 6; ++i) m.base_names.push_back("chroma_stft." + std::to_string(i));
    for (int i = 0; i < 6; ++i) m.base_names.push_back("tonnetz." + std::to_string(i));
    for (int i = 0; i < 20; ++i) m.base_names.push_back("mfcc." + std::to_string(i));
    m.base_names.push_back("rms");
    m.base_names.push_back("centroid");
    m.base_names.push_back("bandwidth");
    for (int i = 0; i < 7; ++i) m.base_names.push_back("contrast." + std::to_string(i));
    m.base_names.push_back("rolloff");
    m.base_names.push_back("chroma_energy");
    m.base_names.push_back("chroma_peak");
    return m;
}

std::vector<std::string> FeatureManifest::full_names() const {
    std::vector<std::string> out;
    out.reserve(base_names.size() * 2);
    for (const auto& b : base_names) {
        out.push_back(b + ".mean");
        out.push_back(b + ".std");
    }
    return out;
}

FeatureVector extract_features(const AudioSegment& seg, const StftConfig& cfg,
                               const FeatureManifest& manifest) {
    if (manifest.base_names.empty()) throw ValidationError("extract_features: empty manifest");
    const Spectrogram spec = stft(seg, cfg);

    std::map<std::string, std::vector<double>> series;
    auto put = [&](const std::string& name, std::vector<double> s) { series[name] = std::move(s); };
    auto put_mat = [&](const std::string& family, const Mat& m) {
        for (std::size_t c = 0; c < m.cols(); ++c) put(family + "." + std::to_string(c), m.col(c));
    };

    put("zcr", zero_crossing_rate(seg, cfg));
    put("rms", rms_energy(seg, cfg));
    put("centroid", spectral_centroid(spec));
    put("bandwidth", spectral_bandwidth(spec));
    put("rolloff", spectral_rolloff(spec));
    put_mat("contrast", spectral_contrast(spec));
    put_mat("mfcc", mfcc(spec));
    const Mat chroma = chroma_stft(spec);
    put_mat("chroma_stft", chroma);
    put_mat("tonnetz", tonnetz(chroma));
    const Mat fold_summary = chroma_fold_summary(spec);
    put("chroma_energy", fold_summary.col(0));
    put("chroma_peak", fold_summary.col(1));

    FeatureVector out;
    out.names = manifest.full_names();
    out.values.reserve(out.names.size());
    for (const auto& base : manifest.base_names) {
        const auto it = series.find(base);
        if (it == series.end()) throw ValidationError("extract_features: unknown feature '" + base + "'");
        for (double v : it->second) {
            if (std::isnan(v)) throw DegeneracyError("extract_features: NaN in feature family '" + base + "'");
        }
        out.values.push_back(mean(it->second));
        out.values.push_back(stddev_population(it->second));
    }
    return out;
}

}  // namespace mfa
