#include "evlcp/wcheck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace evlcp {

namespace {

constexpr double kStrictMargin = 1e-10;

// Advances sigma as a base-(k+1) odometer; false once the space is exhausted.
bool next_sigma(std::vector<int>& sigma, int base) {
  for (std::size_t pos = 0; pos < sigma.size(); ++pos) {
    if (++sigma[pos] < base) return true;
    sigma[pos] = 0;
  }
  return false;
}

}  // namespace

std::optional<std::uint64_t> representative_count(std::size_t n, std::size_t k,
                                                  std::uint64_t cap) {
  std::uint64_t total = 1;
  for (std::size_t s = 0; s < n; ++s) {
    if (total > cap / (k + 1)) return std::nullopt;
    total *= k + 1;
  }
  return total;
}

Matrix spectral_weight_matrix(const BlockMatrix& m, std::size_t from) {
  const std::size_t n = m.n();
  Matrix w(n, n, 0.0);
  for (std::size_t i = from; i <= m.k(); ++i) {
    const Matrix& mi = m.block(i);
    for (std::size_t r = 0; r < n; ++r) {
      const double d = mi(r, r);
      for (std::size_t c = 0; c < n; ++c) {
        if (r == c) continue;
        w(r, c) = std::max(w(r, c), std::abs(mi(r, c)) / d);
      }
    }
  }
  return w;
}

WCheckReport check_spectral(const BlockMatrix& m) {
  WCheckReport report{WMethod::spectral, WVerdict::inconclusive,
                      SpectralCertificate{}, std::nullopt, std::nullopt};
  for (std::size_t i = 0; i <= m.k(); ++i) {
    for (std::size_t s = 0; s < m.n(); ++s) {
      if (m.block(i)(s, s) <= 0.0) {
        report.verdict = WVerdict::fails;
        report.spectral->bad_diagonal = {i, s};
        return report;
      }
    }
  }
  const SpectralRadius rho =
      spectral_radius_nonneg(spectral_weight_matrix(m, 0));
  report.spectral->rho = rho;
  // The certified upper end of the bracket keeps the strict comparison safe.
  report.verdict = rho.upper < 1.0 - kStrictMargin ? WVerdict::holds
                                                   : WVerdict::inconclusive;
  return report;
}

WCheckReport check_sdd(const BlockMatrix& m) {
  WCheckReport report{WMethod::sdd, WVerdict::holds, std::nullopt,
                      SddCertificate{}, std::nullopt};
  const std::size_t n = m.n();
  SddCertificate& cert = *report.sdd;
  cert.row_gaps.assign(n, std::numeric_limits<double>::infinity());
  cert.row_signs.assign(n, 0);

  for (std::size_t s = 0; s < n; ++s) {
    int shared = 0;
    bool row_ok = true;
    for (std::size_t i = 0; i <= m.k(); ++i) {
      const Matrix& mi = m.block(i);
      double off = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != s) off += std::abs(mi(s, j));
      }
      const double gap = std::abs(mi(s, s)) - off;
      cert.row_gaps[s] = std::min(cert.row_gaps[s], gap);
      const int sign = mi(s, s) > 0.0 ? 1 : (mi(s, s) < 0.0 ? -1 : 0);
      if (gap <= 0.0 || sign == 0 || (shared != 0 && sign != shared)) {
        row_ok = false;
        report.verdict = WVerdict::inconclusive;
        if (!cert.violation) cert.violation = {i, s};
      }
      if (shared == 0) shared = sign;
    }
    cert.row_signs[s] = row_ok ? shared : 0;
  }
  return report;
}

WCheckReport check_exact_vertex(const BlockMatrix& m, std::uint64_t cap) {
  if (!representative_count(m.n(), m.k(), cap)) {
    throw TooLarge("check_exact_vertex: representative count exceeds cap");
  }

  WCheckReport report{WMethod::exact_vertex, WVerdict::holds, std::nullopt,
                      std::nullopt, VertexCertificate{}};
  VertexCertificate& cert = *report.vertex;
  const std::size_t n = m.n();

  std::vector<int> sigma(n, 0);
  int first_sign = 0;
  Matrix rep(n, n, 0.0);
  do {
    for (std::size_t s = 0; s < n; ++s) {
      const Matrix& src = m.block(static_cast<std::size_t>(sigma[s]));
      for (std::size_t j = 0; j < n; ++j) rep(s, j) = src(s, j);
    }
    LuFactorization lu(rep);
    const double det = lu.det();
    const double floor =
        1e-12 * std::pow(norm(rep, NormTag::inf), static_cast<double>(n));
    if (lu.singular() || std::abs(det) <= floor) {
      ++cert.zero;
      if (!cert.witness) {
        cert.witness = sigma;
        cert.witness_det = det;
      }
    } else {
      const int sign = det > 0.0 ? 1 : -1;
      (sign > 0 ? cert.positive : cert.negative) += 1;
      if (first_sign == 0) {
        first_sign = sign;
      } else if (sign != first_sign && !cert.witness) {
        cert.witness = sigma;
        cert.witness_det = det;
      }
    }
  } while (next_sigma(sigma, static_cast<int>(m.k()) + 1));

  const bool one_sign =
      cert.zero == 0 && (cert.positive == 0 || cert.negative == 0);
  report.verdict = one_sign ? WVerdict::holds : WVerdict::fails;
  return report;
}

}  // namespace evlcp
