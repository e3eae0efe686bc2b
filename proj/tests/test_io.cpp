#include <cstdio>
#include <string>

#include "doctest.h"
#include "pclone/core.hpp"
#include "pclone/families.hpp"
#include "pclone/io.hpp"

using namespace pclone;

TEST_CASE("relations round-trip through text") {
  for (const Relation& rel :
       {rho_c(), rho_l(), r02_c(5), Relation::full(1), Relation::of(2, {0b01}),
        appendix_relation("P01leq")}) {
    CHECK(parse_relation_text(relation_to_text(rel), "t") == rel);
  }
}

TEST_CASE("functions round-trip through text") {
  for (const PartialFunction& f :
       {encode_function(2, {{0b01, true}, {0b10, true}}),
        PartialFunction::constant(3, false), PartialFunction::projection(2, 1),
        encode_function(1, {{0, false}})}) {
    CHECK(parse_function_text(function_to_text(f), "t") == f);
  }
}

TEST_CASE("empty objects need the arity header and round-trip with it") {
  const Relation empty_rel(3);
  CHECK(relation_to_text(empty_rel) == "arity 3\n");
  CHECK(parse_relation_text("arity 3\n", "t") == empty_rel);

  const PartialFunction empty_fn(2);
  CHECK(function_to_text(empty_fn) == "arity 2\n");
  CHECK(parse_function_text("arity 2\n", "t") == empty_fn);
}

TEST_CASE("a header may precede explicit tuples") {
  const Relation rel = parse_relation_text("arity 2\n01\n10\n", "t");
  CHECK(rel == Relation::of(2, {0b01, 0b10}));
  const PartialFunction f = parse_function_text("arity 2\n11 0\n", "t");
  CHECK(f == encode_function(2, {{0b11, false}}));
}

TEST_CASE("comments, blank lines and padding are ignored") {
  const std::string text = "# leading comment\n\n  01 \n# middle\n\t10\r\n";
  CHECK(parse_relation_text(text, "t") == Relation::of(2, {0b01, 0b10}));
  CHECK(parse_function_text("# c\n01    1\n\n10 1\n", "t") ==
        encode_function(2, {{0b01, true}, {0b10, true}}));
}

TEST_CASE("tuple encoding reads left to right from the first coordinate") {
  const Relation rel = parse_relation_text("100\n", "t");
  CHECK(rel.contains(0b100));
  CHECK(rel.size() == 1);
}

TEST_CASE("relation parse errors name the source and line") {
  CHECK_THROWS_WITH_AS(parse_relation_text("01\n011\n", "f.rel"),
                       "f.rel:2: tuple length 3, expected 2", Error);
  CHECK_THROWS_WITH_AS(parse_relation_text("0a\n", "f.rel"),
                       "f.rel:1: invalid tuple character 'a'", Error);
  CHECK_THROWS_WITH_AS(parse_relation_text("# c\n\n01\n01\n", "f.rel"),
                       "f.rel:4: duplicate tuple 01", Error);
  CHECK_THROWS_WITH_AS(parse_relation_text("", "f.rel"),
                       "f.rel: no tuples in relation file", Error);
  CHECK_THROWS_WITH_AS(parse_relation_text("# only comments\n", "f.rel"),
                       "f.rel: no tuples in relation file", Error);
  CHECK_THROWS_WITH_AS(parse_relation_text("arity x\n", "f.rel"),
                       "f.rel:1: malformed arity header", Error);
  CHECK_THROWS_WITH_AS(parse_relation_text("arity 0\n", "f.rel"),
                       "f.rel:1: unsupported arity 0", Error);
  CHECK_THROWS_WITH_AS(parse_relation_text("arity 25\n", "f.rel"),
                       "f.rel:1: unsupported arity 25", Error);
  CHECK_THROWS_WITH_AS(parse_relation_text("arity 3\n01\n", "f.rel"),
                       "f.rel:2: tuple length 2, expected 3", Error);
  const std::string wide(kMaxArity + 1, '0');
  CHECK_THROWS_WITH_AS(parse_relation_text(wide + "\n", "f.rel"),
                       "f.rel: unsupported arity 25", Error);
}

TEST_CASE("function parse errors name the source and line") {
  CHECK_THROWS_WITH_AS(parse_function_text("01\n", "f.pfn"),
                       "f.pfn:1: expected \"tuple value\"", Error);
  CHECK_THROWS_WITH_AS(parse_function_text("01 1 junk\n", "f.pfn"),
                       "f.pfn:1: trailing content \"junk\"", Error);
  CHECK_THROWS_WITH_AS(parse_function_text("01 2\n", "f.pfn"),
                       "f.pfn:1: value must be 0 or 1, got \"2\"", Error);
  CHECK_THROWS_WITH_AS(parse_function_text("01 1\n01 0\n", "f.pfn"),
                       "f.pfn:2: duplicate mapping for 01", Error);
  CHECK_THROWS_WITH_AS(parse_function_text("01 1\n011 0\n", "f.pfn"),
                       "f.pfn:2: tuple length 3, expected 2", Error);
  CHECK_THROWS_WITH_AS(parse_function_text("", "f.pfn"),
                       "f.pfn: no mappings in function file", Error);
  CHECK_THROWS_WITH_AS(parse_function_text("arity 9999999999999\n", "f.pfn"),
                       "f.pfn:1: malformed arity header", Error);
}

TEST_CASE("files round-trip and missing files are reported") {
  const std::string dir = "io_test_tmp";
  std::remove((dir + ".rel").c_str());
  write_text_file(dir + ".rel", relation_to_text(rho_1()));
  CHECK(read_relation_file(dir + ".rel") == rho_1());
  std::remove((dir + ".rel").c_str());

  write_text_file(dir + ".pfn", function_to_text(PartialFunction(4)));
  const PartialFunction back = read_function_file(dir + ".pfn");
  CHECK(back.arity() == 4);
  CHECK(back.is_empty());
  std::remove((dir + ".pfn").c_str());

  CHECK_THROWS_AS(read_relation_file("definitely_missing.rel"), Error);
}
