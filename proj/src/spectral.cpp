#include "sympcy/spectral.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>
#include <stdexcept>

namespace sympcy {

namespace {

std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

void run_dft(const Grid& g, std::complex<double>* data, int sign) {
  int n[6] = {g.n[0], g.n[1], g.n[2], g.n[3], g.n[4], g.n[5]};
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lk(plan_mutex());
    plan = fftw_plan_dft(6, n, reinterpret_cast<fftw_complex*>(data),
                         reinterpret_cast<fftw_complex*>(data), sign, FFTW_ESTIMATE);
  }
  if (!plan) throw std::runtime_error("fftw plan creation failed");
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lk(plan_mutex());
    fftw_destroy_plan(plan);
  }
}

int freq_of(int i, int n) { return i <= n / 2 ? i : i - n; }

struct ModeTarget {
  int j;
  double w;
};

// Spectral index map from an axis of size nin onto an axis of size nout.
// The Nyquist mode of an even-sized source is split evenly between +n/2 and
// -n/2 (wrapping to the same slot when nout == nin), which keeps the map an
// exact trigonometric resampling for real data.
std::vector<std::vector<ModeTarget>> axis_spread_map(int nin, int nout) {
  std::vector<std::vector<ModeTarget>> map(nin);
  for (int i = 0; i < nin; ++i) {
    if (nin % 2 == 0 && i == nin / 2) {
      int jp = nin / 2;             // +n/2
      int jm = nout - nin / 2;      // -n/2 (mod nout)
      if (jp == jm || jm == nout) {
        map[i].push_back({jp, 1.0});
      } else {
        map[i].push_back({jp, 0.5});
        map[i].push_back({jm % nout, 0.5});
      }
    } else {
      int k = freq_of(i, nin);
      int j = k >= 0 ? k : nout + k;
      map[i].push_back({j, 1.0});
    }
  }
  return map;
}

// Gather map for truncation: each retained output mode lists its sources in
// the larger input axis.  |k| < nout/2 copies; the output Nyquist slot sums
// the +-nout/2 modes of the input.
std::vector<std::vector<ModeTarget>> axis_gather_map(int nin, int nout) {
  std::vector<std::vector<ModeTarget>> map(nout);
  for (int j = 0; j < nout; ++j) {
    if (nout % 2 == 0 && j == nout / 2) {
      int sp = nout / 2;
      int sm = nin - nout / 2;
      map[j].push_back({sp, 1.0});
      if (sm != sp && sm < nin) map[j].push_back({sm, 1.0});
    } else {
      int k = freq_of(j, nout);
      int s = k >= 0 ? k : nin + k;
      map[j].push_back({s, 1.0});
    }
  }
  return map;
}

}  // namespace

std::vector<std::complex<double>> fft_coeffs(const Grid& g, const double* v) {
  const long long np = g.npts();
  std::vector<std::complex<double>> buf(np);
  for (long long p = 0; p < np; ++p) buf[p] = v[p];
  run_dft(g, buf.data(), FFTW_FORWARD);
  const double inv = 1.0 / static_cast<double>(np);
  for (auto& c : buf) c *= inv;
  return buf;
}

void ifft_values(const Grid& g, const std::vector<std::complex<double>>& coeffs, double* out) {
  std::vector<std::complex<double>> buf = coeffs;
  run_dft(g, buf.data(), FFTW_BACKWARD);
  const long long np = g.npts();
  for (long long p = 0; p < np; ++p) out[p] = buf[p].real();
}

void spectral_derivative(const Grid& g, const double* v, int axis, double* out) {
  const long long np = g.npts();
  if (!g.active(axis)) {
    std::memset(out, 0, sizeof(double) * np);
    return;
  }
  auto coeffs = fft_coeffs(g, v);
  for (long long p = 0; p < np; ++p) {
    auto ci = g.coords(p);
    int n = g.n[axis];
    int i = ci[axis];
    double k;
    if (n % 2 == 0 && i == n / 2)
      k = 0.0;  // Nyquist zeroed for the odd derivative
    else
      k = freq_of(i, n);
    coeffs[p] *= std::complex<double>(0.0, k);
  }
  ifft_values(g, coeffs, out);
}

void lowpass(const Grid& g, double* v, int kmax) {
  auto coeffs = fft_coeffs(g, v);
  const long long np = g.npts();
  for (long long p = 0; p < np; ++p) {
    auto ci = g.coords(p);
    for (int a = 0; a < 6; ++a) {
      int n = g.n[a];
      int k = (n % 2 == 0 && ci[a] == n / 2) ? n / 2 : freq_of(ci[a], n);
      if (std::abs(k) > kmax) {
        coeffs[p] = 0;
        break;
      }
    }
  }
  ifft_values(g, coeffs, v);
}

Grid padded_grid(const Grid& g) {
  Grid out = g;
  for (int a = 0; a < 6; ++a)
    if (g.active(a)) out.n[a] = (3 * g.n[a] + 1) / 2;
  return out;
}

void pad_to(const Grid& gin, const double* v, const Grid& gout, double* out) {
  auto cin = fft_coeffs(gin, v);
  std::vector<std::complex<double>> cout(gout.npts(), 0.0);
  std::array<std::vector<std::vector<ModeTarget>>, 6> maps;
  for (int a = 0; a < 6; ++a) maps[a] = axis_spread_map(gin.n[a], gout.n[a]);
  const long long np = gin.npts();
  for (long long p = 0; p < np; ++p) {
    if (cin[p] == std::complex<double>(0.0, 0.0)) continue;
    auto ci = gin.coords(p);
    // cartesian product over per-axis targets (at most 2 per axis)
    int idx[6] = {0, 0, 0, 0, 0, 0};
    for (;;) {
      double w = 1.0;
      std::array<int, 6> co{};
      for (int a = 0; a < 6; ++a) {
        const ModeTarget& t = maps[a][ci[a]][idx[a]];
        w *= t.w;
        co[a] = t.j;
      }
      cout[gout.index(co)] += w * cin[p];
      int a = 5;
      while (a >= 0) {
        if (++idx[a] < static_cast<int>(maps[a][ci[a]].size())) break;
        idx[a] = 0;
        --a;
      }
      if (a < 0) break;
    }
  }
  ifft_values(gout, cout, out);
}

void truncate_to(const Grid& gin, const double* v, const Grid& gout, double* out) {
  auto cin = fft_coeffs(gin, v);
  std::vector<std::complex<double>> cout(gout.npts(), 0.0);
  std::array<std::vector<std::vector<ModeTarget>>, 6> maps;
  for (int a = 0; a < 6; ++a) maps[a] = axis_gather_map(gin.n[a], gout.n[a]);
  const long long np = gout.npts();
  for (long long p = 0; p < np; ++p) {
    auto co = gout.coords(p);
    int idx[6] = {0, 0, 0, 0, 0, 0};
    std::complex<double> acc = 0.0;
    for (;;) {
      double w = 1.0;
      std::array<int, 6> ci{};
      for (int a = 0; a < 6; ++a) {
        const ModeTarget& t = maps[a][co[a]][idx[a]];
        w *= t.w;
        ci[a] = t.j;
      }
      acc += w * cin[gin.index(ci)];
      int a = 5;
      while (a >= 0) {
        if (++idx[a] < static_cast<int>(maps[a][co[a]].size())) break;
        idx[a] = 0;
        --a;
      }
      if (a < 0) break;
    }
    cout[p] = acc;
  }
  ifft_values(gout, cout, out);
}

}  // namespace sympcy
