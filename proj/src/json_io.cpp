#include "evlcp/json_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

namespace evlcp {

namespace {

const char* method_name(WMethod m) {
  switch (m) {
    case WMethod::spectral:
      return "spectral";
    case WMethod::sdd:
      return "sdd";
    case WMethod::exact_vertex:
      return "exact-vertex";
  }
  return "?";
}

const char* verdict_name(WVerdict v) {
  switch (v) {
    case WVerdict::holds:
      return "holds";
    case WVerdict::fails:
      return "fails";
    case WVerdict::inconclusive:
      return "inconclusive";
  }
  return "?";
}

const char* kind_name(BoundKind k) {
  switch (k) {
    case BoundKind::gamma:
      return "gamma";
    case BoundKind::delta:
      return "delta";
    case BoundKind::gamma_vlcp:
      return "gamma-vlcp";
    case BoundKind::delta_vlcp:
      return "delta-vlcp";
    case BoundKind::alpha_sample:
      return "alpha-sample";
  }
  return "?";
}

}  // namespace

EvlcpProblem problem_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("k") ||
      !j.contains("M") || !j.contains("q")) {
    throw Error("problem json: expected object with n, k, M, q");
  }
  const auto n = j.at("n").get<std::size_t>();
  const auto k = j.at("k").get<std::size_t>();
  const auto& jm = j.at("M");
  const auto& jq = j.at("q");
  if (!jm.is_array() || jm.size() != k + 1 || !jq.is_array() ||
      jq.size() != k + 1) {
    throw Error("problem json: M and q must list k+1 blocks");
  }

  std::vector<Matrix> blocks;
  for (const auto& jb : jm) {
    if (!jb.is_array() || jb.size() != n) {
      throw Error("problem json: each block needs n rows");
    }
    std::vector<double> entries;
    entries.reserve(n * n);
    for (const auto& row : jb) {
      if (!row.is_array() || row.size() != n) {
        throw Error("problem json: each row needs n numbers");
      }
      for (const auto& v : row) entries.push_back(v.get<double>());
    }
    blocks.emplace_back(n, n, std::move(entries));
  }

  std::vector<Vector> parts;
  for (const auto& jp : jq) {
    if (!jp.is_array() || jp.size() != n) {
      throw Error("problem json: each q part needs n numbers");
    }
    Vector part;
    part.reserve(n);
    for (const auto& v : jp) part.push_back(v.get<double>());
    parts.push_back(std::move(part));
  }

  const bool vlcp = j.value("vlcp", false);
  return {BlockMatrix(std::move(blocks)), BlockVector(std::move(parts)), vlcp};
}

nlohmann::json problem_to_json(const EvlcpProblem& p) {
  nlohmann::json j;
  j["n"] = p.n();
  j["k"] = p.k();
  nlohmann::json jm = nlohmann::json::array();
  for (std::size_t i = 0; i <= p.k(); ++i) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < p.n(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t c = 0; c < p.n(); ++c) row.push_back(p.M.block(i)(r, c));
      rows.push_back(std::move(row));
    }
    jm.push_back(std::move(rows));
  }
  j["M"] = std::move(jm);
  nlohmann::json jq = nlohmann::json::array();
  for (std::size_t i = 0; i <= p.k(); ++i) jq.push_back(p.q.part(i));
  j["q"] = std::move(jq);
  j["vlcp"] = p.vlcp;
  return j;
}

EvlcpProblem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open problem file: " + path);
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error("problem json parse failure: " + std::string(e.what()));
  }
  return problem_from_json(j);
}

void save_problem(const std::string& path, const EvlcpProblem& p) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot write problem file: " + path);
  }
  out << problem_to_json(p).dump(2) << '\n';
}

nlohmann::json to_json(const SolveResult& result) {
  return {{"x", result.x},
          {"residual_inf", result.residual_inf},
          {"iterations", result.iterations},
          {"active_map", result.active_map},
          {"method",
           result.method == SolveMethod::newton ? "newton" : "enumerate"}};
}

nlohmann::json to_json(const WCheckReport& report) {
  nlohmann::json j;
  j["method"] = method_name(report.method);
  j["verdict"] = verdict_name(report.verdict);
  if (report.spectral) {
    if (report.spectral->rho) {
      j["rho"] = report.spectral->rho->value;
      j["rho_bracket"] = {report.spectral->rho->lower,
                          report.spectral->rho->upper};
    }
    if (report.spectral->bad_diagonal) {
      j["nonpositive_diagonal"] = {report.spectral->bad_diagonal->first,
                                   report.spectral->bad_diagonal->second};
    }
  }
  if (report.sdd) {
    j["row_gaps"] = report.sdd->row_gaps;
    j["row_signs"] = report.sdd->row_signs;
    if (report.sdd->violation) {
      j["violation"] = {report.sdd->violation->first,
                        report.sdd->violation->second};
    }
  }
  if (report.vertex) {
    j["determinant_signs"] = {{"positive", report.vertex->positive},
                              {"negative", report.vertex->negative},
                              {"zero", report.vertex->zero}};
    if (report.vertex->witness) {
      j["witness"] = *report.vertex->witness;
      j["witness_det"] = report.vertex->witness_det;
    }
  }
  return j;
}

nlohmann::json to_json(const BoundSet& set) {
  nlohmann::json j;
  j["kind"] = kind_name(set.kind);
  j["values"] = set.values;
  j["first_block"] = set.first_block();
  j["norm"] = "inf";
  return j;
}

nlohmann::json to_json(const BoundReport& report) {
  nlohmann::json j;
  j["eta"] = report.eta;
  j["applicable"] = report.applicable();
  if (report.tau) j["tau"] = *report.tau;
  if (report.tau_bar) j["tau_bar"] = *report.tau_bar;
  if (report.nu) j["nu"] = *report.nu;
  if (report.upsilon) j["upsilon"] = *report.upsilon;
  return j;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  if (text == "nan") return std::nan("");
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw Error("cannot parse number: " + text);
  }
  return v;
}

}  // namespace evlcp
