#pragma once

// Convergence experiment: for each node count n, solve the boundary integral
// system once, evaluate every (method, truncation) analytic approximation at
// the same 2n boundary nodes, and record the sup-norm discrepancy.

#include <charconv>
#include <complex>
#include <cstdio>
#include <future>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "json.hpp"
#include "szego/error.hpp"
#include "szego/kernel.hpp"
#include "szego/nystrom.hpp"

namespace szego::bench {

enum class OutputFormat { csv, json };

struct ExperimentConfig {
  double rho = 0.5;
  cplx<double> a{0.0, 0.7};
  std::vector<int> series4_widths{10, 50, 100};
  std::vector<int> series5_widths{10, 50};
  std::vector<int> product_depths{15, 20, 25};
  std::vector<int> node_counts{16, 32, 64, 128};
  OutputFormat output_format = OutputFormat::csv;
  std::string output_path;  // empty: stdout

  void validate() const {
    AnnulusDomain<double>(rho, a);
    if (series4_widths.empty() || series5_widths.empty() || product_depths.empty() ||
        node_counts.empty()) {
      throw InvalidArgument("experiment lists must be nonempty");
    }
    for (int w : series4_widths) TruncationSpec{w, 0}.validate();
    for (int w : series5_widths) TruncationSpec{w, 0}.validate();
    for (int p : product_depths) TruncationSpec{1, p}.validate();
    for (int n : node_counts) {
      if (n < 4 || n % 2 != 0) throw InvalidArgument("node counts must be even and >= 4");
    }
  }
};

/// One column of an error table: a method at a fixed truncation, with one
/// cell per node count.
struct ErrorColumn {
  Method method;
  int truncation;
  std::vector<double> errors;
};

struct ErrorTable {
  std::vector<int> node_counts;
  std::vector<ErrorColumn> columns;

  std::optional<double> cell(Method method, int truncation, int n) const {
    for (std::size_t r = 0; r < node_counts.size(); ++r) {
      if (node_counts[r] != n) continue;
      for (const auto& c : columns) {
        if (c.method == method && c.truncation == truncation) return c.errors[r];
      }
    }
    return std::nullopt;
  }
};

/// Evaluator failure annotated with the table cell it happened in.
class CellError : public Error {
 public:
  using Error::Error;
};

/// Analytic kernel values at the grid nodes.
inline std::vector<cplx<double>> boundary_values(const AnnulusDomain<double>& dom,
                                                 const BoundaryGrid<double>& grid, Method method,
                                                 const TruncationSpec& trunc) {
  std::vector<cplx<double>> v;
  v.reserve(grid.size());
  for (const auto& z : grid.nodes) v.push_back(eval_canonical(dom, z, method, trunc));
  return v;
}

namespace detail {

struct ColumnSpec {
  Method method;
  int truncation;
};

inline std::vector<ColumnSpec> column_specs(const ExperimentConfig& cfg) {
  std::vector<ColumnSpec> specs;
  for (int w : cfg.series4_widths) specs.push_back({Method::series4, w});
  for (int w : cfg.series5_widths) specs.push_back({Method::series5, w});
  for (int p : cfg.product_depths) specs.push_back({Method::product21, p});
  return specs;
}

inline TruncationSpec truncation_for(const ColumnSpec& c) {
  if (c.method == Method::product21) return {1, c.truncation};
  return {c.truncation, 0};
}

inline std::vector<double> run_row(const ExperimentConfig& cfg, const std::vector<ColumnSpec>& specs,
                                   int n) {
  const AnnulusDomain<double> dom(cfg.rho, cfg.a);
  const auto grid = build_boundary_grid(cfg.rho, n);
  std::vector<cplx<double>> reference;
  try {
    reference = solve_ks(grid, cfg.a);
  } catch (const Error& e) {
    throw CellError("n=" + std::to_string(n) + " integral-equation solve: " + e.what());
  }
  std::vector<double> row;
  row.reserve(specs.size());
  for (const auto& c : specs) {
    try {
      const auto values = boundary_values(dom, grid, c.method, truncation_for(c));
      row.push_back(error_norm<double>(values, reference));
    } catch (const Error& e) {
      throw CellError("n=" + std::to_string(n) + " " + std::string(to_string(c.method)) + " " +
                      std::to_string(c.truncation) + ": " + e.what());
    }
  }
  return row;
}

inline std::string format_cell(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.5e", v);
  return buf;
}

inline std::string_view family_title(Method m) {
  switch (m) {
    case Method::series4: return "series4: (1/2pi) sum (z conj a)^n / (1 + rho^(2n+1))";
    case Method::series5: return "series5: (1/2pi) sum (-1)^n rho^n / (rho^(2n) - z conj a)";
    case Method::product21: return "product: infinite product, factors n = 0..P";
    case Method::closed30: return "closed";
  }
  return "";
}

}  // namespace detail

/// Rows (node counts) run concurrently, each with its own system.
inline ErrorTable run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto specs = detail::column_specs(cfg);

  std::vector<std::future<std::vector<double>>> rows;
  rows.reserve(cfg.node_counts.size());
  for (int n : cfg.node_counts) {
    rows.push_back(std::async(std::launch::async,
                              [&cfg, &specs, n] { return detail::run_row(cfg, specs, n); }));
  }

  ErrorTable table;
  table.node_counts = cfg.node_counts;
  for (const auto& c : specs) table.columns.push_back({c.method, c.truncation, {}});
  for (auto& f : rows) {
    const auto row = f.get();
    for (std::size_t k = 0; k < row.size(); ++k) table.columns[k].errors.push_back(row[k]);
  }
  return table;
}

/// One block per method family, each headed by a '#' line naming it.
inline std::string to_csv(const ErrorTable& table) {
  std::string out;
  for (Method family : {Method::series4, Method::series5, Method::product21}) {
    std::vector<const ErrorColumn*> cols;
    for (const auto& c : table.columns) {
      if (c.method == family) cols.push_back(&c);
    }
    if (cols.empty()) continue;
    out += "# ";
    out += detail::family_title(family);
    out += '\n';
    out += "n";
    const char* key = family == Method::product21 ? ",P=" : ",N=";
    for (const auto* c : cols) out += key + std::to_string(c->truncation);
    out += '\n';
    for (std::size_t r = 0; r < table.node_counts.size(); ++r) {
      out += std::to_string(table.node_counts[r]);
      for (const auto* c : cols) out += "," + detail::format_cell(c->errors[r]);
      out += '\n';
    }
  }
  return out;
}

inline nlohmann::json to_json(const ErrorTable& table, const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["rho"] = cfg.rho;
  j["a"] = {{"re", cfg.a.real()}, {"im", cfg.a.imag()}};
  j["node_counts"] = table.node_counts;
  auto cols = nlohmann::json::array();
  for (const auto& c : table.columns) {
    cols.push_back({{"method", std::string(to_string(c.method))},
                    {"truncation", c.truncation},
                    {"errors", c.errors}});
  }
  j["columns"] = std::move(cols);
  return j;
}

inline std::string render(const ErrorTable& table, const ExperimentConfig& cfg) {
  if (cfg.output_format == OutputFormat::json) return to_json(table, cfg).dump(2) + "\n";
  return to_csv(table);
}

/// Parses "x", "yi", "x+yi", "x-yi", "i", "-i" (also 'j'). Exponents such as
/// "1e-3+2e-3i" are accepted.
inline std::optional<cplx<double>> parse_complex(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  if (s.empty()) return std::nullopt;

  auto parse_real = [](std::string_view t) -> std::optional<double> {
    if (!t.empty() && t.front() == '+') t.remove_prefix(1);
    if (t.empty() || t.front() == '+') return std::nullopt;
    double v{};
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size()) return std::nullopt;
    return v;
  };

  if (s.back() != 'i' && s.back() != 'j') {
    const auto re = parse_real(s);
    if (!re) return std::nullopt;
    return cplx<double>{*re, 0.0};
  }
  const std::string_view body = s.substr(0, s.size() - 1);

  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string_view re_part = split == std::string_view::npos ? "" : body.substr(0, split);
  std::string_view im_part = split == std::string_view::npos ? body : body.substr(split);

  double re = 0.0;
  if (split != std::string_view::npos) {
    const auto r = parse_real(re_part);
    if (!r) return std::nullopt;
    re = *r;
  }
  double im{};
  if (im_part.empty() || im_part == "+") {
    im = 1.0;
  } else if (im_part == "-") {
    im = -1.0;
  } else {
    const auto v = parse_real(im_part);
    if (!v) return std::nullopt;
    im = *v;
  }
  return cplx<double>{re, im};
}

inline std::string format_complex(cplx<double> c) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g%+.12gi", c.real(), c.imag());
  return buf;
}

/// Overlays keys of a JSON config object onto cfg. Recognised keys: rho,
/// a (string literal or {"re", "im"}), series4_widths, series5_widths,
/// product_depths, node_counts, format ("csv" | "json"), out.
inline void apply_config(const nlohmann::json& j, ExperimentConfig& cfg) {
  if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
  auto complex_of = [](const nlohmann::json& v) {
    if (v.is_string()) {
      const auto c = parse_complex(v.get<std::string>());
      if (!c) throw InvalidArgument("malformed complex literal in config");
      return *c;
    }
    if (v.is_number()) return cplx<double>{v.get<double>(), 0.0};
    return cplx<double>{v.at("re").get<double>(), v.at("im").get<double>()};
  };
  try {
    if (j.contains("rho")) cfg.rho = j["rho"].get<double>();
    if (j.contains("a")) cfg.a = complex_of(j["a"]);
    if (j.contains("series4_widths")) cfg.series4_widths = j["series4_widths"].get<std::vector<int>>();
    if (j.contains("series5_widths")) cfg.series5_widths = j["series5_widths"].get<std::vector<int>>();
    if (j.contains("product_depths")) cfg.product_depths = j["product_depths"].get<std::vector<int>>();
    if (j.contains("node_counts")) cfg.node_counts = j["node_counts"].get<std::vector<int>>();
    if (j.contains("format")) {
      const auto f = j["format"].get<std::string>();
      if (f == "csv") {
        cfg.output_format = OutputFormat::csv;
      } else if (f == "json") {
        cfg.output_format = OutputFormat::json;
      } else {
        throw InvalidArgument("format must be csv or json");
      }
    }
    if (j.contains("out")) cfg.output_path = j["out"].get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("bad config value: ") + e.what());
  }
}

}  // namespace szego::bench
