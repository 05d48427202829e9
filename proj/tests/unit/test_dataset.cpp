#include <doctest.h>

#include "shiftcert/dataset.hpp"
#include "shiftcert/error.hpp"

using namespace shiftcert;

TEST_CASE("csv parse") {
  const Dataset d = parse_dataset_csv("a, b,label\n1,2,0\n\n3.5,-1,1\n");
  CHECK(d.dim == 2);
  CHECK(d.size() == 2);
  CHECK(d.feature_names == std::vector<std::string>{"a", "b"});
  CHECK(d.row(1)[0] == 3.5);
  CHECK(d.labels == std::vector<int>{0, 1});
}

TEST_CASE("csv errors carry the line") {
  try {
    parse_dataset_csv("a,label\n1,0\nx,1\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.field() == "a");
  }
  CHECK_THROWS_AS(parse_dataset_csv("a,b\n1,0\n"), ParseError);
  CHECK_THROWS_AS(parse_dataset_csv("a,label\n1,2\n"), ParseError);
  CHECK_THROWS_AS(parse_dataset_csv("a,label\n1,0,3\n"), ParseError);
  CHECK_THROWS_AS(parse_dataset_csv("a,label\n"), ParseError);
}

TEST_CASE("input rows") {
  CHECK(parse_input_vector("x1,x2\n1,0.8\n") == std::vector<double>{1.0, 0.8});
  CHECK(parse_input_vector("-2.57") == std::vector<double>{-2.57});
  CHECK(parse_input_rows("1,2\n3,4\n").size() == 2);
  CHECK_THROWS_AS(parse_input_vector("1,2\n3,4\n"), ParseError);
  CHECK_THROWS_AS(parse_input_rows("1,2\n3\n"), ParseError);
  CHECK_THROWS_AS(parse_input_rows("a,b\nc,d\n"), ParseError);
}

TEST_CASE("normalization") {
  const Dataset d = parse_dataset_csv("a,b,label\n0,5,0\n10,5,1\n5,5,0\n");
  const Normalization n = fit_normalization(d);
  CHECK(normalize(std::vector<double>{5.0, 5.0}, n) == std::vector<double>{0.5, 0.0});
  const Dataset s = normalize(d, n);
  CHECK(s.row(1)[0] == 1.0);
}

TEST_CASE("two clusters and splits") {
  const Dataset d = make_two_clusters(101, 3, 7);
  CHECK(d.size() == 101);
  for (double v : d.features) CHECK((v >= 0.0 && v <= 1.0));
  const auto [a, b] = split_halves(d, 1);
  CHECK(a.size() == 51);
  CHECK(b.size() == 50);
  CHECK(concat(a, b).size() == 101);
  CHECK(make_two_clusters(101, 3, 7).features == d.features);
  CHECK(shuffled(d, 3).features != d.features);
}

TEST_CASE("round trip through a file") {
  const Dataset d = make_two_clusters(20, 2, 1);
  const auto path = std::filesystem::temp_directory_path() / "shiftcert_ds.csv";
  save_dataset_csv(d, path);
  const Dataset back = load_dataset_csv(path);
  CHECK(back.features == d.features);
  CHECK(back.labels == d.labels);
  std::filesystem::remove(path);
}
