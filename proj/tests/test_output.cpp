#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>

#include "metawave/output.hpp"

using namespace metawave;

TEST_CASE("VTK snapshot of the two-cell mesh") {
  const Mesh mesh = build_structured(Rect{0, 0, 1, 1}, 1);
  Eigen::VectorXd p(2);
  p << 1.5, -2.0;
  Eigen::Matrix<double, Eigen::Dynamic, 2> v(2, 2);
  v << 0.25, -1.0, 2.0, 0.5;
  const std::string got = vtk_snapshot(mesh, {{"p", p}}, {{"v", v}});
  const std::string want =
      "# vtk DataFile Version 3.0\n"
      "metawave snapshot\n"
      "ASCII\n"
      "DATASET UNSTRUCTURED_GRID\n"
      "POINTS 4 double\n"
      "0 0 0\n"
      "1 0 0\n"
      "0 1 0\n"
      "1 1 0\n"
      "CELLS 2 8\n"
      "3 0 1 3\n"
      "3 0 3 2\n"
      "CELL_TYPES 2\n"
      "5\n"
      "5\n"
      "CELL_DATA 2\n"
      "SCALARS p double 1\n"
      "LOOKUP_TABLE default\n"
      "1.5\n"
      "-2\n"
      "VECTORS v double\n"
      "0.25 -1 0\n"
      "2 0.5 0\n";
  CHECK(got == want);

  Eigen::VectorXd wrong(3);
  wrong << 1, 2, 3;
  CHECK_THROWS_AS(vtk_snapshot(mesh, {{"p", wrong}}, {}),
                  std::invalid_argument);
}

TEST_CASE("CSV escaping follows RFC 4180") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_escape("line\nbreak") == "\"line\nbreak\"");
  CHECK(csv_escape("") == "");
}

TEST_CASE("CSV tables are rectangular with CRLF line ends") {
  const std::string out =
      csv_table({"t", "E"}, {{"0", "1.25"}, {"0.1", "1,5"}});
  CHECK(out == "t,E\r\n0,1.25\r\n0.1,\"1,5\"\r\n");
  CHECK_THROWS_AS(csv_table({"a", "b"}, {{"1"}}), std::invalid_argument);
}

TEST_CASE("CSV snapshot lists centroids with one column per field") {
  const Mesh mesh = build_structured(Rect{0, 0, 1, 1}, 1);
  Eigen::VectorXd p(2);
  p << 3.0, 4.0;
  Eigen::Matrix<double, Eigen::Dynamic, 2> v(2, 2);
  v << 1.0, 2.0, 3.0, 4.0;
  const std::string out = csv_snapshot(mesh, {{"p", p}}, {{"v", v}});
  const std::string line1 = out.substr(0, out.find("\r\n"));
  CHECK(line1 == "x,y,p,v_x,v_y");
  // Centroids of the two triangles of the unit square.
  CHECK(out.find("\r\n0.66666666666666663,0.33333333333333331,3,1,2\r\n") !=
        std::string::npos);
  CHECK(out.find("\r\n0.33333333333333331,0.66666666666666663,4,3,4\r\n") !=
        std::string::npos);
}

TEST_CASE("cell means and centroid values extract DG data") {
  auto mesh = std::make_shared<Mesh>(build_structured(Rect{0, 0, 1, 1}, 2));
  const FESpace Q(*mesh, ElementFamily::dg_scalar(1));
  auto lin = [](const Vec2& x) { return 2.0 * x.x() - x.y(); };
  const Eigen::VectorXd coeffs = Q.project(lin);
  const Eigen::VectorXd means = cell_means(Q, coeffs);
  REQUIRE(means.size() == mesh->n_cells());
  for (int c = 0; c < mesh->n_cells(); ++c)
    CHECK(means(c) == doctest::Approx(lin(mesh->centroid(c))).epsilon(1e-12));

  const FESpace W(*mesh, ElementFamily::dg_vector(1));
  auto vf = [](const Vec2& x) -> Vec2 { return Vec2(x.y(), 1.0 - x.x()); };
  const auto vals = centroid_values(W, W.project_vector(vf));
  REQUIRE(vals.rows() == mesh->n_cells());
  for (int c = 0; c < mesh->n_cells(); ++c) {
    const Vec2 want = vf(mesh->centroid(c));
    CHECK(vals(c, 0) == doctest::Approx(want.x()).epsilon(1e-12));
    CHECK(vals(c, 1) == doctest::Approx(want.y()).epsilon(1e-12));
  }
}

TEST_CASE("text files round-trip through the writer") {
  const std::string path = "metawave_test_output.txt";
  write_text_file(path, "hello\nworld\n");
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  CHECK(content == "hello\nworld\n");
  std::remove(path.c_str());
}
