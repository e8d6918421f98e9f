#pragma once

#include <filesystem>
#include <vector>

namespace mfa {

struct AudioSegment {
    std::vector<double> samples;  // mono, nominally in [-1, 1]
    int sample_rate_hz = 0;
};

// Reads a RIFF/WAVE file: 16-bit PCM or 32-bit IEEE float, any channel
// count (channels are downmixed by averaging).
AudioSegment read_wav(const std::filesystem::path& path);

// Writes mono 16-bit PCM; samples are clipped to [-1, 1].
void write_wav_pcm16(const std::filesystem::path& path, const AudioSegment& seg);

// Writes mono 32-bit IEEE float.
void write_wav_float32(const std::filesystem::path& path, const AudioSegment& seg);

// Linear-interpolation resampler. Quality beyond linear is out of scope.
AudioSegment resample_linear(const AudioSegment& seg, int target_rate_hz);

}  // namespace mfa
