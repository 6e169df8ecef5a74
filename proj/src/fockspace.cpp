// SPDX-License-Identifier: Apache-2.0
#include "pdc/fockspace.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pdc/errors.hpp"
#include "moments.hpp"
#include "summation.hpp"

namespace pdc {

namespace {

constexpr int kMinCutoff = 4;

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

int sector_dimension(int N) {
  if (N < 0) throw ArgumentError("sector_dimension: negative charge " + std::to_string(N));
  return N / 2 + 1;
}

double TwoModeState::norm2() const {
  detail::CompensatedSum s;
  for (const auto& sec : sectors) s.add(sec.weight());
  return s.value();
}

CVector coherent_amplitudes(cplx alpha, int cutoff) {
  if (!finite(alpha)) throw ArgumentError("coherent_amplitudes: non-finite amplitude");
  if (cutoff < 0) throw ArgumentError("coherent_amplitudes: negative cutoff");
  CVector c(cutoff + 1);
  const double r = std::abs(alpha);
  if (r == 0.0) {
    c.setZero();
    c(0) = 1.0;
    return c;
  }
  const double phase = std::arg(alpha);
  const double log_r = std::log(r);
  double log_mag = -0.5 * r * r;
  for (int n = 0; n <= cutoff; ++n) {
    if (n > 0) log_mag += log_r - 0.5 * std::log(static_cast<double>(n));
    c(n) = std::polar(std::exp(log_mag), phase * n);
  }
  return c;
}

int coherent_cutoff(cplx alpha, double sigma_mult, int n_max) {
  const double r = std::abs(alpha);
  int cut = static_cast<int>(std::ceil(r * r + sigma_mult * r));
  cut = std::max(cut, kMinCutoff);
  if (n_max > 0) cut = std::min(cut, n_max);
  return cut;
}

TwoModeState initial_state(cplx alpha2, cplx alpha1, const TruncationSpec& truncation) {
  if (!finite(alpha1) || !finite(alpha2)) throw ArgumentError("initial_state: non-finite amplitude");
  if (truncation.sigma_mult <= 0.0 || truncation.leak_tol <= 0.0)
    throw ConfigError("truncation: sigma_mult and leak_tol must be positive");

  const bool seeded = alpha1 != cplx{};
  // Poisson tails outgrow the sigma rule for small means; extend until each
  // mode sheds at most a quarter of the budget or the cap is reached.
  auto widen = [&](cplx alpha, int cut, int cap) {
    while ((cap <= 0 || cut < cap) && 1.0 - coherent_amplitudes(alpha, cut).squaredNorm() > 0.25 * truncation.leak_tol)
      ++cut;
    return cut;
  };
  const int cut2 = widen(alpha2, coherent_cutoff(alpha2, truncation.sigma_mult, truncation.n2_max), truncation.n2_max);
  const int cut1 = seeded ? widen(alpha1, coherent_cutoff(alpha1, truncation.sigma_mult), 0) : 0;
  const CVector c2 = coherent_amplitudes(alpha2, cut2);
  const CVector c1 = coherent_amplitudes(alpha1, cut1);

  const double kept = c1.squaredNorm() * c2.squaredNorm();
  if (kept < 1.0 - truncation.leak_tol) {
    std::ostringstream msg;
    msg << "initial_state: truncation keeps weight " << kept << " (pump cutoff " << cut2
        << ", sub-harmonic cutoff " << cut1 << "), below 1 - leak_tol = " << 1.0 - truncation.leak_tol;
    throw TruncationError(msg.str());
  }

  TwoModeState st;
  st.truncation = truncation;
  st.discarded_weight = 1.0 - kept;
  const int n_max = cut1 + 2 * cut2;
  st.sectors.resize(n_max + 1);
  const double scale = 1.0 / std::sqrt(kept);
  for (int N = 0; N <= n_max; ++N) {
    SectorState& sec = st.sectors[N];
    sec.sector.N = N;
    sec.amplitudes = CVector::Zero(sector_dimension(N));
    for (int k = 0; k <= N / 2; ++k) {
      const int n1 = N - 2 * k;
      if (k <= cut2 && n1 <= cut1) sec.amplitudes(k) = c1(n1) * c2(k) * scale;
    }
  }
  return st;
}

cplx hamiltonian_coupling(int N, int k, cplx K) {
  const double n1 = N - 2 * k;  // n1 of basis state k; state k-1 has n1 + 2
  const double m = std::sqrt(static_cast<double>(k) * (n1 + 1.0) * (n1 + 2.0));
  return cplx(0.0, 0.5) * K * m;
}

void apply_hamiltonian(int N, const CVector& in, cplx K, CVector& out) {
  const int d = N / 2 + 1;
  out.resize(d);
  out.setZero();
  for (int k = 1; k < d; ++k) {
    const cplx h = hamiltonian_coupling(N, k, K);
    out(k - 1) += h * in(k);
    out(k) += std::conj(h) * in(k - 1);
  }
}

SectorState apply_hamiltonian(const SectorState& state, cplx K) {
  SectorState out;
  out.sector = state.sector;
  out.time = state.time;
  apply_hamiltonian(state.sector.N, state.amplitudes, K, out.amplitudes);
  return out;
}

CMatrix sector_hamiltonian_dense(int N, cplx K) {
  const int d = sector_dimension(N);
  CMatrix H = CMatrix::Zero(d, d);
  for (int k = 1; k < d; ++k) {
    const cplx h = hamiltonian_coupling(N, k, K);
    H(k - 1, k) = h;
    H(k, k - 1) = std::conj(h);
  }
  return H;
}

int padded_dimension(int dim) { return dim + std::max(20, dim / 4); }

CMatrix annihilation_matrix(int dim) {
  CMatrix a = CMatrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

CMatrix displacement_matrix(cplx alpha, int dim) {
  if (dim < 1) throw ArgumentError("displacement_matrix: dim must be >= 1");
  const int p = padded_dimension(dim);
  const CMatrix a = annihilation_matrix(p);
  const CMatrix gen = alpha * a.adjoint() - std::conj(alpha) * a;
  const CMatrix full = gen.exp();
  return full.topLeftCorner(dim, dim);
}

CMatrix squeeze_matrix(cplx eta, int dim) {
  if (dim < 1) throw ArgumentError("squeeze_matrix: dim must be >= 1");
  const int p = padded_dimension(dim);
  const CMatrix a = annihilation_matrix(p);
  const CMatrix a2 = a * a;
  const CMatrix gen = 0.5 * eta * a2.adjoint() - 0.5 * std::conj(eta) * a2;
  CMatrix full = gen.exp();
  // Parity is exact: clear the rounding residue on odd (m + n).
  for (int m = 0; m < p; ++m)
    for (int n = (m + 1) % 2; n < p; n += 2) full(m, n) = 0.0;
  return full.topLeftCorner(dim, dim);
}

namespace detail {

void SectorMoments::add(int N, const cplx* psi, int d, const cplx* lo1, const cplx* lo2,
                        const cplx* lo4) {
  for (int k = 0; k < d; ++k) {
    const double p = std::norm(psi[k]);
    norm.add(p);
    n1.add(p * (N - 2 * k));
    n2.add(p * k);
  }
  if (lo2) {
    // <a2>: |n1, k> -> sqrt(k) |n1, k-1>, which is index k-1 of sector N-2.
    for (int k = 1; k < d; ++k)
      a2.add(std::conj(lo2[k - 1]) * psi[k] * std::sqrt(static_cast<double>(k)));
    // <a1^2>: |n1, k> -> sqrt(n1 (n1-1)) |n1-2, k>, index k of sector N-2.
    for (int k = 0; k < d; ++k) {
      const int m = N - 2 * k;
      if (m < 2) continue;
      a1sq.add(std::conj(lo2[k]) * psi[k] * std::sqrt(static_cast<double>(m) * (m - 1)));
    }
  }
  if (lo4) {
    for (int k = 2; k < d; ++k)
      a2sq.add(std::conj(lo4[k - 2]) * psi[k] * std::sqrt(static_cast<double>(k) * (k - 1)));
  }
  if (lo1) {
    // <a1>: |n1, k> -> sqrt(n1) |n1-1, k>, index k of sector N-1.
    for (int k = 0; k < d; ++k) {
      const int m = N - 2 * k;
      if (m < 1) continue;
      a1.add(std::conj(lo1[k]) * psi[k] * std::sqrt(static_cast<double>(m)));
    }
  }
}

Observables SectorMoments::finish(double norm_tol) const {
  Observables o;
  o.norm2 = norm.value();
  if (!(std::abs(o.norm2 - 1.0) <= norm_tol)) {
    std::ostringstream msg;
    msg << "observables: state norm^2 = " << o.norm2 << " outside tolerance " << norm_tol;
    throw IntegrityError(msg.str());
  }
  o.n1 = n1.value();
  o.n2 = n2.value();
  o.a1 = a1.value();
  o.a2 = a2.value();
  o.a1sq = a1sq.value();
  const cplx a2sq_v = a2sq.value();
  o.var_x1 = variance_x(o.n1, o.a1, o.a1sq);
  o.var_p1 = variance_p(o.n1, o.a1, o.a1sq);
  o.var_x2 = variance_x(o.n2, o.a2, a2sq_v);
  o.var_p2 = variance_p(o.n2, o.a2, a2sq_v);
  o.manley_rowe = o.n1 + 2.0 * o.n2;
  return o;
}

}  // namespace detail

Observables observables_from_sectors(const std::vector<CVector>& amps, double norm_tol) {
  const int n_sec = static_cast<int>(amps.size());
  auto sector = [&](int N) -> const cplx* {
    if (N < 0 || N >= n_sec || amps[N].size() == 0) return nullptr;
    return amps[N].data();
  };
  detail::SectorMoments m;
  for (int N = 0; N < n_sec; ++N) {
    const cplx* psi = sector(N);
    if (!psi) continue;
    m.add(N, psi, static_cast<int>(amps[N].size()), sector(N - 1), sector(N - 2), sector(N - 4));
  }
  return m.finish(norm_tol);
}

Observables observables(const TwoModeState& state) {
  std::vector<CVector> amps;
  amps.reserve(state.sectors.size());
  for (const auto& s : state.sectors) amps.push_back(s.amplitudes);
  return observables_from_sectors(amps, state.truncation.norm_tol);
}

}  // namespace pdc
