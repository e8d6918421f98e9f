#include "mfa/wav.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "mfa/errors.hpp"

namespace mfa {

namespace {

struct Cursor {
    const std::uint8_t* p;
    std::size_t remaining;
    std::string name;

    void need(std::size_t n) const {
        if (remaining < n) throw ValidationError(name + ": truncated WAV file");
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = std::uint32_t(p[0]) | (std::uint32_t(p[1]) << 8) | (std::uint32_t(p[2]) << 16) |
                          (std::uint32_t(p[3]) << 24);
        p += 4;
        remaining -= 4;
        return v;
    }
    std::uint16_t u16() {
        need(2);
        std::uint16_t v = std::uint16_t(p[0] | (p[1] << 8));
        p += 2;
        remaining -= 2;
        return v;
    }
    void tag(char out[5]) {
        need(4);
        std::memcpy(out, p, 4);
        out[4] = 0;
        p += 4;
        remaining -= 4;
    }
    void skip(std::size_t n) {
        need(n);
        p += n;
        remaining -= n;
    }
};

void put_u32(std::ofstream& o, std::uint32_t v) {
    char b[4] = {char(v & 0xff), char((v >> 8) & 0xff), char((v >> 16) & 0xff), char((v >> 24) & 0xff)};
    o.write(b, 4);
}
void put_u16(std::ofstream& o, std::uint16_t v) {
    char b[2] = {char(v & 0xff), char((v >> 8) & 0xff)};
    o.write(b, 2);
}

void write_header(std::ofstream& o, int sample_rate, std::uint16_t format, std::uint16_t bits,
                  std::uint32_t data_bytes) {
    const std::uint16_t channels = 1;
    const std::uint32_t byte_rate = std::uint32_t(sample_rate) * channels * bits / 8;
    o.write("RIFF", 4);
    put_u32(o, 36 + data_bytes);
    o.write("WAVE", 4);
    o.write("fmt ", 4);
    put_u32(o, 16);
    put_u16(o, format);
    put_u16(o, channels);
    put_u32(o, std::uint32_t(sample_rate));
    put_u32(o, byte_rate);
    put_u16(o, std::uint16_t(channels * bits / 8));
    put_u16(o, bits);
    o.write("data", 4);
    put_u32(o, data_bytes);
}

}  // namespace

AudioSegment read_wav(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open: " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    Cursor c{bytes.data(), bytes.size(), path.filename().string()};
    char tag[5];
    c.tag(tag);
    if (std::strcmp(tag, "RIFF") != 0) throw ValidationError(c.name + ": not a RIFF file");
    c.u32();  // riff size, unreliable in the wild
    c.tag(tag);
    if (std::strcmp(tag, "WAVE") != 0) throw ValidationError(c.name + ": not a WAVE file");

    std::uint16_t format = 0, channels = 0, bits = 0;
    std::uint32_t sample_rate = 0;
    bool have_fmt = false;

    while (c.remaining >= 8) {
        c.tag(tag);
        std::uint32_t size = c.u32();
        if (std::strcmp(tag, "fmt ") == 0) {
            if (size < 16) throw ValidationError(c.name + ": malformed fmt chunk");
            format = c.u16();
            channels = c.u16();
            sample_rate = c.u32();
            c.u32();  // byte rate
            c.u16();  // block align
            bits = c.u16();
            c.skip(size - 16 + (size & 1));
            have_fmt = true;
        } else if (std::strcmp(tag, "data") == 0) {
            if (!have_fmt) throw ValidationError(c.name + ": data chunk before fmt");
            if (channels == 0 || sample_rate == 0) throw ValidationError(c.name + ": invalid fmt chunk");
            c.need(size);

            std::size_t frame_bytes = std::size_t(channels) * bits / 8;
            if (frame_bytes == 0) throw ValidationError(c.name + ": invalid bit depth");
            const std::size_t n_frames = size / frame_bytes;

            AudioSegment seg;
            seg.sample_rate_hz = int(sample_rate);
            seg.samples.resize(n_frames);

            const std::uint8_t* d = c.p;
            if (format == 1 && bits == 16) {
                for (std::size_t f = 0; f < n_frames; ++f) {
                    double acc = 0.0;
                    for (std::uint16_t ch = 0; ch < channels; ++ch) {
                        const std::uint8_t* s = d + f * frame_bytes + 2 * ch;
                        const std::int16_t v = std::int16_t(s[0] | (s[1] << 8));
                        acc += double(v) / 32768.0;
                    }
                    seg.samples[f] = acc / channels;
                }
            } else if (format == 3 && bits == 32) {
                for (std::size_t f = 0; f < n_frames; ++f) {
                    double acc = 0.0;
                    for (std::uint16_t ch = 0; ch < channels; ++ch) {
                        std::uint32_t raw;
                        std::memcpy(&raw, d + f * frame_bytes + 4 * ch, 4);
                        float v;
                        std::memcpy(&v, &raw, 4);
                        acc += double(v);
                    }
                    seg.samples[f] = acc / channels;
                }
            } else {
                throw ValidationError(c.name + ": unsupported WAV format (need 16-bit PCM or 32-bit float), got format=" +
                                      std::to_string(format) + " bits=" + std::to_string(bits));
            }
            return seg;
        } else {
            c.skip(std::min<std::size_t>(size + (size & 1), c.remaining));
        }
    }
    throw ValidationError(c.name + ": no data chunk found");
}

void write_wav_pcm16(const std::filesystem::path& path, const AudioSegment& seg) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write: " + path.string());
    write_header(out, seg.sample_rate_hz, 1, 16, std::uint32_t(seg.samples.size() * 2));
    for (double s : seg.samples) {
        const double clipped = std::clamp(s, -1.0, 1.0);
        const auto v = std::int16_t(std::lrint(clipped * 32767.0));
        put_u16(out, std::uint16_t(v));
    }
}

void write_wav_float32(const std::filesystem::path& path, const AudioSegment& seg) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write: " + path.string());
    write_header(out, seg.sample_rate_hz, 3, 32, std::uint32_t(seg.samples.size() * 4));
    for (double s : seg.samples) {
        const float f = float(s);
        std::uint32_t raw;
        std::memcpy(&raw, &f, 4);
        put_u32(out, raw);
    }
}

AudioSegment resample_linear(const AudioSegment& seg, int target_rate_hz) {
    if (target_rate_hz <= 0) throw ValidationError("resample_linear: bad target rate");
    if (seg.sample_rate_hz <= 0) throw ValidationError("resample_linear: bad source rate");
    if (target_rate_hz == seg.sample_rate_hz || seg.samples.empty()) {
        AudioSegment out = seg;
        out.sample_rate_hz = target_rate_hz;
        return out;
    }
    const double ratio = double(seg.sample_rate_hz) / double(target_rate_hz);
    const auto n_out = std::size_t(std::floor(double(seg.samples.size() - 1) / ratio)) + 1;
    AudioSegment out;
    out.sample_rate_hz = target_rate_hz;
    out.samples.resize(n_out);
    for (std::size_t i = 0; i < n_out; ++i) {
        const double pos = double(i) * ratio;
        const auto lo = std::size_t(std::floor(pos));
        const std::size_t hi = std::min(lo + 1, seg.samples.size() - 1);
        const double w = pos - double(lo);
        out.samples[i] = seg.samples[lo] * (1.0 - w) + seg.samples[hi] * w;
    }
    return out;
}

}  // namespace mfa
