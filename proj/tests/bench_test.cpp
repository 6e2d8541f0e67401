#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "json.hpp"
#include "szego/bench.hpp"

using namespace szego;
using namespace szego::bench;

namespace {

const ErrorTable& default_table() {
  static const ErrorTable table = run_experiment(ExperimentConfig{});
  return table;
}

}  // namespace

TEST(RunExperiment, DefaultShape) {
  const auto& t = default_table();
  EXPECT_EQ(t.node_counts, (std::vector<int>{16, 32, 64, 128}));
  ASSERT_EQ(t.columns.size(), 8u);
  for (const auto& c : t.columns) {
    ASSERT_EQ(c.errors.size(), 4u);
    for (double e : c.errors) EXPECT_GE(e, 0.0);
  }
}

TEST(RunExperiment, ReferenceCells) {
  const auto& t = default_table();
  EXPECT_LE(*t.cell(Method::series4, 100, 128), 1e-12);
  const double p25 = *t.cell(Method::product21, 25, 64);
  EXPECT_GT(p25, 1.8835e-11);
  EXPECT_LT(p25, 1.8835e-9);
  EXPECT_FALSE(t.cell(Method::series4, 7, 64).has_value());
}

TEST(RunExperiment, SingleCell) {
  ExperimentConfig cfg;
  cfg.node_counts = {16};
  cfg.series4_widths = {10};
  cfg.series5_widths = {10};
  cfg.product_depths = {15};
  const auto t = run_experiment(cfg);
  EXPECT_NEAR(*t.cell(Method::series4, 10, 16), 2.4536e-2, 1e-6);
}

TEST(RunExperiment, ColumnsImproveWithNodes) {
  const auto& t = default_table();
  for (auto [m, trunc] : {std::pair{Method::series4, 100}, std::pair{Method::series5, 50},
                          std::pair{Method::product21, 25}}) {
    for (int k = 1; k < 4; ++k) {
      EXPECT_LE(*t.cell(m, trunc, t.node_counts[static_cast<std::size_t>(k)]),
                *t.cell(m, trunc, t.node_counts[static_cast<std::size_t>(k - 1)]))
          << to_string(m);
    }
  }
}

TEST(RunExperiment, ProductBeatsSeriesAboveRoundoff) {
  const auto& t = default_table();
  EXPECT_LE(*t.cell(Method::product21, 25, 64), *t.cell(Method::series4, 50, 64));
  // At n = 128 both columns sit on the double-precision floor; their order is noise.
  EXPECT_LT(*t.cell(Method::product21, 25, 128), 1e-14);
  EXPECT_LT(*t.cell(Method::series4, 100, 128), 1e-14);
}

TEST(RunExperiment, Deterministic) {
  const auto cfg = ExperimentConfig{};
  EXPECT_EQ(render(run_experiment(cfg), cfg), render(default_table(), cfg));
}

TEST(RunExperiment, InvalidConfig) {
  ExperimentConfig cfg;
  cfg.node_counts = {};
  EXPECT_THROW(run_experiment(cfg), InvalidArgument);
  cfg = {};
  cfg.node_counts = {15};
  EXPECT_THROW(run_experiment(cfg), InvalidArgument);
  cfg = {};
  cfg.a = {0.0, 0.3};
  EXPECT_THROW(run_experiment(cfg), DomainViolation);
}

TEST(Csv, Layout) {
  const std::string csv = to_csv(default_table());
  EXPECT_EQ(csv.find('\r'), std::string::npos);
  EXPECT_EQ(csv.back(), '\n');
  EXPECT_NE(csv.find("n,N=10,N=50,N=100\n16,2.45360e-02,"), std::string::npos);
  EXPECT_NE(csv.find("n,N=10,N=50\n"), std::string::npos);
  EXPECT_NE(csv.find("n,P=15,P=20,P=25\n"), std::string::npos);
  // Three family blocks, each: title, header, four rows.
  int lines = 0, titles = 0;
  std::size_t start = 0;
  while (start < csv.size()) {
    const auto end = csv.find('\n', start);
    if (csv[start] == '#') ++titles;
    ++lines;
    start = end + 1;
  }
  EXPECT_EQ(titles, 3);
  EXPECT_EQ(lines, 3 * 6);
}

TEST(Json, CarriesExactCells) {
  ExperimentConfig cfg;
  cfg.output_format = OutputFormat::json;
  const auto j = nlohmann::json::parse(render(default_table(), cfg));
  EXPECT_EQ(j["rho"].get<double>(), 0.5);
  EXPECT_EQ(j["a"]["im"].get<double>(), 0.7);
  ASSERT_EQ(j["columns"].size(), 8u);
  const auto& t = default_table();
  for (std::size_t k = 0; k < t.columns.size(); ++k) {
    EXPECT_EQ(j["columns"][k]["errors"].get<std::vector<double>>(), t.columns[k].errors);
  }
  EXPECT_EQ(j["columns"][5]["method"], "product");
}

TEST(ParseComplex, AcceptedForms) {
  using C = std::complex<double>;
  EXPECT_EQ(parse_complex("0.7i"), C(0.0, 0.7));
  EXPECT_EQ(parse_complex("-0.714285714i"), C(0.0, -0.714285714));
  EXPECT_EQ(parse_complex("1"), C(1.0, 0.0));
  EXPECT_EQ(parse_complex("+2.5"), C(2.5, 0.0));
  EXPECT_EQ(parse_complex("1+i"), C(1.0, 1.0));
  EXPECT_EQ(parse_complex("-i"), C(0.0, -1.0));
  EXPECT_EQ(parse_complex("i"), C(0.0, 1.0));
  EXPECT_EQ(parse_complex("0.5-0.3i"), C(0.5, -0.3));
  EXPECT_EQ(parse_complex("1e-3+2e-3i"), C(1e-3, 2e-3));
  EXPECT_EQ(parse_complex("-1.5E+2-4j"), C(-150.0, -4.0));
  EXPECT_EQ(parse_complex(" 0.25 "), C(0.25, 0.0));
}

TEST(ParseComplex, RejectsMalformed) {
  for (const char* s : {"", "abc", "1+", "0.7ii", "1..2", "1+2", "i1", "++1", "0.5+-0.2i", "1 + 2i"}) {
    EXPECT_FALSE(parse_complex(s).has_value()) << s;
  }
}

TEST(FormatComplex, Signed) {
  EXPECT_EQ(format_complex({0.5, -0.25}), "0.5-0.25i");
  EXPECT_EQ(format_complex({0.0, 0.7}), "0+0.7i");
}

TEST(Config, OverlayAndErrors) {
  ExperimentConfig cfg;
  apply_config(nlohmann::json::parse(R"({"rho": 0.4, "a": "0.1+0.6i", "node_counts": [8, 16],
                                        "format": "json", "out": "x.json"})"),
               cfg);
  EXPECT_EQ(cfg.rho, 0.4);
  EXPECT_EQ(cfg.a, std::complex<double>(0.1, 0.6));
  EXPECT_EQ(cfg.node_counts, (std::vector<int>{8, 16}));
  EXPECT_EQ(cfg.output_format, OutputFormat::json);
  EXPECT_EQ(cfg.output_path, "x.json");
  EXPECT_EQ(cfg.series4_widths, (std::vector<int>{10, 50, 100}));

  apply_config(nlohmann::json::parse(R"({"a": {"re": 0.0, "im": 0.8}})"), cfg);
  EXPECT_EQ(cfg.a, std::complex<double>(0.0, 0.8));

  EXPECT_THROW(apply_config(nlohmann::json::parse(R"({"format": "xml"})"), cfg), InvalidArgument);
  EXPECT_THROW(apply_config(nlohmann::json::parse(R"({"a": "zz"})"), cfg), InvalidArgument);
  EXPECT_THROW(apply_config(nlohmann::json::parse(R"({"rho": "half"})"), cfg), InvalidArgument);
  EXPECT_THROW(apply_config(nlohmann::json::parse("[1, 2]"), cfg), InvalidArgument);
}
