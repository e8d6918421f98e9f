#include "mfa/fft.hpp"

#include <cmath>

#include "mfa/errors.hpp"

namespace mfa {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void fft_radix2(std::vector<std::complex<double>>& x) {
    const std::size_t n = x.size();
    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double angle = -kTwoPi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(angle), std::sin(angle));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = x[i + k];
                const std::complex<double> v = x[i + k + len / 2] * w;
                x[i + k] = u + v;
                x[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

void dft_naive(std::vector<std::complex<double>>& x) {
    const std::size_t n = x.size();
    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t m = 0; m < n; ++m) {
            const double angle = -kTwoPi * static_cast<double>(k) * static_cast<double>(m) /
                                 static_cast<double>(n);
            acc += x[m] * std::complex<double>(std::cos(angle), std::sin(angle));
        }
        out[k] = acc;
    }
    x = std::move(out);
}

}  // namespace

void fft_forward(std::vector<std::complex<double>>& x) {
    if (x.empty()) throw ValidationError("fft_forward: empty input");
    if (is_power_of_two(x.size())) fft_radix2(x);
    else dft_naive(x);
}

std::vector<std::complex<double>> rfft(std::span<const double> x) {
    if (x.empty()) throw ValidationError("rfft: empty input");
    std::vector<std::complex<double>> buf(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) buf[i] = std::complex<double>(x[i], 0.0);
    fft_forward(buf);
    buf.resize(x.size() / 2 + 1);
    return buf;
}

}  // namespace mfa
