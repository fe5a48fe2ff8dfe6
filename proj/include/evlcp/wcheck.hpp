#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "evlcp/model.hpp"

namespace evlcp {

enum class WMethod { spectral, sdd, exact_vertex };

// holds / fails are definitive for the respective test; the two sufficient
// tests report inconclusive when their hypothesis is met but the criterion is
// not, since neither can refute the row W-property.
enum class WVerdict { holds, fails, inconclusive };

struct SpectralCertificate {
  std::optional<SpectralRadius> rho;
  // First (block, row) with a nonpositive diagonal entry, when any.
  std::optional<std::pair<std::size_t, std::size_t>> bad_diagonal;
};

struct SddCertificate {
  // Per row: min over blocks of |a_ss| - sum_{j != s} |a_sj|.
  std::vector<double> row_gaps;
  // Per row: shared diagonal sign (+1/-1); 0 marks a sign clash.
  std::vector<int> row_signs;
  // First (block, row) violating dominance or the shared-sign requirement.
  std::optional<std::pair<std::size_t, std::size_t>> violation;
};

struct VertexCertificate {
  std::uint64_t positive = 0;
  std::uint64_t negative = 0;
  std::uint64_t zero = 0;
  // A representative with zero or minority-sign determinant, when the test
  // fails.
  std::optional<std::vector<int>> witness;
  double witness_det = 0.0;
};

struct WCheckReport {
  WMethod method;
  WVerdict verdict;
  std::optional<SpectralCertificate> spectral;
  std::optional<SddCertificate> sdd;
  std::optional<VertexCertificate> vertex;
};

// Sufficient test of Lemma-3.3 type: positive diagonals everywhere and
// rho(max_i diag(M_i)^-1 |offdiag(M_i)|) < 1. "fails" only flags a
// nonpositive diagonal (hypothesis violated), never the property itself.
WCheckReport check_spectral(const BlockMatrix& m);

// Sufficient test: every block strictly diagonally dominant and, per row, all
// block diagonals sharing a strict sign.
WCheckReport check_sdd(const BlockMatrix& m);

// Exact for (k+1)^n <= cap: the weighted combination's determinant is a convex
// combination of the (k+1)^n row-representative determinants, so a common
// strict sign at the vertices decides nonsingularity on the whole weight set.
WCheckReport check_exact_vertex(const BlockMatrix& m,
                                std::uint64_t cap = 1000000);

// max_i diag(M_i)^-1 |C_i| over blocks [from, k]; requires positive diagonals.
Matrix spectral_weight_matrix(const BlockMatrix& m, std::size_t from);

// Number of row representatives (k+1)^n, or nullopt when it exceeds cap.
std::optional<std::uint64_t> representative_count(std::size_t n, std::size_t k,
                                                  std::uint64_t cap);

}  // namespace evlcp
