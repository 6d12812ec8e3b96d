#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "resnet_synth/approx.hpp"
#include "resnet_synth/io.hpp"
#include "resnet_synth/render.hpp"
#include "resnet_synth/synthesize.hpp"
#include "support.hpp"

namespace rs = resnet_synth;
using rs::Vector;

namespace {

rs::LabeledDataset parse(const std::string& text) {
  std::istringstream in(text);
  return rs::read_dataset(in, "t.csv");
}

std::string error_text(const std::string& text) {
  try {
    parse(text);
  } catch (const rs::Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(DatasetCsv, ParsesCommentsAndHeader) {
  auto d = parse("# xor\n2,2\n0,0,1\n\n1, 1 ,1\n0,1,2\n1,0,2\n");
  EXPECT_EQ(d.n, 2u);
  EXPECT_EQ(d.k, 2);
  ASSERT_EQ(d.size(), 4u);
  EXPECT_EQ(d.points[1], (Vector{1, 1}));
  EXPECT_EQ(d.labels, (std::vector<int>{1, 1, 2, 2}));
}

TEST(DatasetCsv, DuplicateReportsFileLines) {
  auto msg = error_text("2,2\n0,0,1\n1,1,2\n# note\n0,0,2\n");
  EXPECT_NE(msg.find("duplicate point at lines 2 and 5"), std::string::npos) << msg;
}

TEST(DatasetCsv, BadRowsReported) {
  EXPECT_NE(error_text("2,2\n0,0\n").find("t.csv:2: expected 3 fields"), std::string::npos);
  EXPECT_NE(error_text("2,2\n0,0,3\n").find("label must be an integer in 1..2"), std::string::npos);
  EXPECT_NE(error_text("2,2\n0,x,1\n").find("malformed number"), std::string::npos);
  EXPECT_NE(error_text("# only comments\n").find("missing"), std::string::npos);
  EXPECT_NE(error_text("2.5,2\n").find("header"), std::string::npos);
}

TEST(DatasetCsv, WriteReadRoundTrip) {
  auto d = rs::testing::random_dataset(8, 3, 4, 50);
  std::ostringstream out;
  rs::write_dataset(out, d);
  auto back = parse(out.str());
  EXPECT_EQ(back.points, d.points);
  EXPECT_EQ(back.labels, d.labels);
}

TEST(Samples, ParseAndReject) {
  std::istringstream good("0,1\n0.5,2\n");
  EXPECT_EQ(rs::read_samples(good).size(), 2u);
  std::istringstream bad("0,1,2\n");
  EXPECT_THROW(rs::read_samples(bad), rs::Error);
}

TEST(NetworkFile, RoundTripIsBitExact) {
  auto d = rs::testing::random_dataset(21, 3, 3, 40);
  auto s = rs::synthesize(d);
  std::string text = rs::serialize_net(s.net);
  rs::ResNet back = rs::deserialize_net(text);
  EXPECT_EQ(rs::serialize_net(back), text);
  auto probes = rs::testing::random_probes(4, rs::Box{{-6, -6, -6}, {6, 6, 6}}, 100);
  for (const auto& p : probes) EXPECT_EQ(rs::eval_net(back, p).output, rs::eval_net(s.net, p).output);
  EXPECT_EQ(back.metadata.branches.size(), s.net.metadata.branches.size());
  EXPECT_EQ(back.metadata.branches[0].shifts, s.net.metadata.branches[0].shifts);
  EXPECT_EQ(back.metadata.strategy_log, s.net.metadata.strategy_log);
}

TEST(NetworkFile, Deterministic) {
  auto d = rs::testing::random_dataset(22, 2, 3, 30);
  EXPECT_EQ(rs::serialize_net(rs::synthesize(d).net), rs::serialize_net(rs::synthesize(d).net));
}

TEST(NetworkFile, ApproximatorKeepsReadOff) {
  auto spec = rs::fit_pwc([](double x) { return std::sin(x); }, 0.0, 6.0, 20);
  auto a = rs::build_approximator(spec);
  auto b = rs::approximator_from_net(rs::deserialize_net(rs::serialize_net(a.net)));
  EXPECT_EQ(b.offset, a.offset);
  for (int g = 0; g <= 60; ++g) EXPECT_EQ(b(g * 0.1), a(g * 0.1));
}

TEST(NetworkFile, TruncatedHasByteOffset) {
  std::string text = rs::serialize_net(rs::synthesize(rs::testing::xor_dataset()).net);
  std::string cut = text.substr(0, text.size() / 2);
  try {
    rs::deserialize_net(cut);
    FAIL() << "expected parse error";
  } catch (const rs::ParseError& e) {
    EXPECT_EQ(e.kind(), rs::ErrorKind::parse);
    EXPECT_GT(e.byte_offset(), 0u);
    EXPECT_LE(e.byte_offset(), cut.size() + 1);
    EXPECT_NE(std::string(e.what()).find("byte"), std::string::npos);
  }
}

TEST(NetworkFile, VersionBumpRejected) {
  std::string text = rs::serialize_net(rs::synthesize(rs::testing::xor_dataset()).net);
  auto pos = text.find("\"version\": 1");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 12, "\"version\": 2");
  try {
    rs::deserialize_net(text);
    FAIL() << "expected version error";
  } catch (const rs::Error& e) {
    EXPECT_EQ(e.kind(), rs::ErrorKind::unsupported_version);
    EXPECT_NE(std::string(e.what()).find("unsupported version"), std::string::npos);
  }
}

TEST(NetworkFile, SchemaErrors) {
  EXPECT_THROW(rs::deserialize_net(R"({"format": "other", "version": 1})"), rs::Error);
  EXPECT_THROW(rs::deserialize_net(R"({"format": "resnet-synth-net", "version": 1, "blocks": 3})"), rs::Error);
  std::string text = rs::serialize_net(rs::synthesize(rs::testing::xor_dataset()).net);
  auto pos = text.find("\"bias\": [");
  ASSERT_NE(pos, std::string::npos);
  text.insert(pos + 9, "\"oops\",");
  EXPECT_THROW(rs::deserialize_net(text), rs::Error);
}

TEST(Report, RoundTripAndRecheck) {
  auto d = rs::testing::xor_dataset();
  auto s = rs::synthesize(d);
  auto text = rs::serialize_report(s.report);
  auto back = rs::deserialize_report(text);
  EXPECT_EQ(back.passed, 4u);
  EXPECT_EQ(back.points.size(), 4u);
  EXPECT_EQ(back.points[3].readout, s.report.points[3].readout);
  EXPECT_TRUE(rs::recheck_report(back));
  EXPECT_EQ(rs::serialize_report(back), text);
}

TEST(Render, XorRegions) {
  auto s = rs::synthesize(rs::testing::xor_dataset());
  auto grid = rs::sample_regions(s.net, {-0.5, 1.5, -0.5, 1.5}, 200, 200);
  std::size_t counts[3] = {0, 0, 0};
  for (std::size_t r = 0; r < 200; ++r) {
    for (std::size_t c = 0; c < 200; ++c) {
      int cat = grid.cells[r][c];
      ++counts[cat];
      if (cat == 0) continue;
      // A colored cell lies in a cover box of that category or in the band
      // (-gamma, 0) of one of its facets, where the chain may act either way.
      Vector x{grid.cell_x(c), grid.cell_y(r)};
      bool explained = false;
      for (const auto& p : s.covers[cat - 1].polytopes) {
        const auto& b = *p.box;
        explained = explained || (x[0] > b.lower[0] && x[0] < b.upper[0] && x[1] > b.lower[1] && x[1] < b.upper[1]);
        for (const auto& f : p.facets) {
          double v = f.plane.value(x);
          explained = explained || (v > -f.gamma && v < 0);
        }
      }
      EXPECT_TRUE(explained) << x[0] << "," << x[1];
    }
  }
  EXPECT_GT(counts[1], 0u);
  EXPECT_GT(counts[2], 0u);
  EXPECT_GT(counts[0], counts[1] + counts[2]);
  // Cells at the four data points carry their class.
  auto at = [&](double x, double y) {
    return grid.cells[static_cast<std::size_t>((y + 0.5) / 2 * 200)][static_cast<std::size_t>((x + 0.5) / 2 * 200)];
  };
  EXPECT_EQ(at(0.001, 0.001), 1);
  EXPECT_EQ(at(1.001, 1.001), 1);
  EXPECT_EQ(at(0.001, 1.001), 2);
  EXPECT_EQ(at(1.001, 0.001), 2);
  std::ostringstream svg;
  auto d = rs::testing::xor_dataset();
  rs::write_svg(svg, grid, &d);
  EXPECT_NE(svg.str().find("<svg"), std::string::npos);
  std::string text = svg.str();
  std::size_t circles = 0;
  for (auto pos = text.find("<circle"); pos != std::string::npos; pos = text.find("<circle", pos + 1)) ++circles;
  EXPECT_EQ(circles, 4u);
}

TEST(Render, SingleCell) {
  auto s = rs::synthesize(rs::testing::xor_dataset());
  std::string svg = rs::render_regions_svg(s.net, {0, 1, 0, 1}, 1, 1);
  EXPECT_NE(svg.find("<rect"), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(Render, RejectsNonPlanarInput) {
  auto s = rs::synthesize(rs::testing::random_dataset(2, 3, 2, 10));
  try {
    rs::render_regions_svg(s.net, {0, 1, 0, 1}, 10, 10);
    FAIL() << "expected rejection";
  } catch (const rs::Error& e) {
    EXPECT_EQ(e.kind(), rs::ErrorKind::invalid_input);
    EXPECT_NE(std::string(e.what()).find("2-D"), std::string::npos);
  }
}
