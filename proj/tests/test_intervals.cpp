#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "pclone/core.hpp"
#include "pclone/families.hpp"
#include "pclone/fingerprint.hpp"
#include "pclone/intervals.hpp"
#include "pclone/preserve.hpp"

using namespace pclone;

namespace {

std::size_t idx(const LatticeReport& report, const std::string& label) {
  for (std::size_t i = 0; i < report.elements.size(); ++i) {
    if (report.elements[i].label == label) return i;
  }
  FAIL("no element labelled ", label);
  return 0;
}

std::size_t count_occurrences(const std::string& text, const std::string& what) {
  std::size_t n = 0;
  for (std::size_t pos = text.find(what); pos != std::string::npos;
       pos = text.find(what, pos + what.size())) {
    ++n;
  }
  return n;
}

std::vector<Relation> zero_one_basis() {
  return {appendix_relation("P0"), appendix_relation("P1"),
          appendix_relation("P01")};
}

const std::vector<std::string> kZeroOneNames = {"P0", "P1", "P01"};

}  // namespace

TEST_CASE("a one-relation basis yields a two-element chain") {
  const LatticeReport report =
      intersection_closure({appendix_relation("Pleq")}, {"Pleq"});
  REQUIRE(report.elements.size() == 2);
  const std::size_t top = idx(report, "pPol{}");
  const std::size_t bottom = idx(report, "pPol{Pleq}");
  CHECK(report.bottom_index() == bottom);
  CHECK(report.order ==
        std::vector<std::pair<std::size_t, std::size_t>>{{bottom, top}});
  CHECK(report.cover_pairs() == report.order);
  REQUIRE(report.order_defects.size() == 1);
  CHECK(report.order_defects[0].from == top);
  CHECK(report.order_defects[0].to == bottom);
  CHECK(report.order_defects[0].target_label == "Pleq");
  CHECK(report.leq(bottom, top));
  CHECK(!report.leq(top, bottom));
}

TEST_CASE("the zero-one basis closes into seven classes") {
  const LatticeReport report = intersection_closure(zero_one_basis(), kZeroOneNames);
  REQUIRE(report.elements.size() == 7);
  CHECK(report.basis_names == kZeroOneNames);

  const std::size_t joint = idx(report, "pPol{P0,P1}");
  CHECK(report.elements[joint].mask == 0b011);
  CHECK(report.elements[joint].merged_masks == std::vector<std::uint32_t>{0b111});
  CHECK(report.bottom_index() == joint);
  for (std::size_t i = 0; i < report.elements.size(); ++i) {
    if (i != joint) {
      CHECK(report.elements[i].merged_masks.empty());
      CHECK(report.leq(joint, i));
    }
  }

  const std::size_t n = report.elements.size();
  CHECK(report.order.size() == 15);
  CHECK(report.order_defects.size() == 27);
  CHECK(report.order.size() + report.order_defects.size() == n * (n - 1));
  CHECK(report.cover_pairs().size() == 9);

  for (const auto& [a, b] : report.order) {
    CHECK(!report.leq(b, a));
    CHECK(report.elements[a].fingerprint.is_subset_of(
        report.elements[b].fingerprint));
  }
  for (const auto& [a, b] : report.order) {
    for (const auto& [c, d] : report.order) {
      if (b == c) CHECK(report.leq(a, d));
    }
  }

  CHECK(report.leq(idx(report, "pPol{P0,P01}"), idx(report, "pPol{P0}")));
  CHECK(report.leq(idx(report, "pPol{P0,P01}"), idx(report, "pPol{P01}")));
  CHECK(!report.leq(idx(report, "pPol{P0,P01}"), idx(report, "pPol{P1}")));
  CHECK(!report.leq(idx(report, "pPol{P0}"), idx(report, "pPol{P01}")));

  bool found = false;
  for (const OrderDefect& d : report.order_defects) {
    if (d.from == idx(report, "pPol{P0}") && d.to == idx(report, "pPol{P1}")) {
      CHECK(d.target_label == "P1");
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("classification names every total part") {
  LatticeReport report = intersection_closure(zero_one_basis(), kZeroOneNames);
  classify_report(report, candidate_entries("T0T1"));
  CHECK(report.elements[idx(report, "pPol{}")].total_part == "O");
  CHECK(report.elements[idx(report, "pPol{P0}")].total_part == "T0");
  CHECK(report.elements[idx(report, "pPol{P1}")].total_part == "T1");
  CHECK(report.elements[idx(report, "pPol{P01}")].total_part == "T0T1");
  CHECK(report.elements[idx(report, "pPol{P0,P1}")].total_part == "T0T1");

  const std::map<std::string, std::size_t> expected = {
      {"O", 1}, {"T0", 1}, {"T1", 1}, {"T0T1", 4}};
  CHECK(report.total_part_counts == expected);
  std::size_t total = 0;
  for (const auto& [name, c] : report.total_part_counts) total += c;
  CHECK(total == report.elements.size());
}

TEST_CASE("filtering keeps the elements above a clone") {
  const LatticeReport closure = intersection_closure(zero_one_basis(), kZeroOneNames);
  LatticeReport above = filter_above(closure, find_clone("T0"));
  REQUIRE(above.elements.size() == 2);
  CHECK(above.order ==
        std::vector<std::pair<std::size_t, std::size_t>>{
            {idx(above, "pPol{P0}"), idx(above, "pPol{}")}});
  // The full-union element was filtered out, so there is no bottom.
  CHECK_THROWS_AS(above.bottom_index(), Error);
  classify_report(above, candidate_entries("T0"));
  const std::map<std::string, std::size_t> expected = {{"O", 1}, {"T0", 1}};
  CHECK(above.total_part_counts == expected);
}

TEST_CASE("the interval pipeline matches its stored references") {
  const IntervalComputation top = compute_interval("O");
  CHECK(top.report.elements.size() == 1);
  CHECK(top.closure_size == 1);
  CHECK(top.basis_used == "minimal");
  CHECK(!top.retried);
  CHECK(top.report.elements[0].total_part == "O");

  const IntervalComputation t01 = compute_interval("T0T1");
  CHECK(t01.basis_used == "minimal");
  CHECK(t01.closure_size == 7);
  CHECK(t01.report.elements.size() == 7);
  CHECK(t01.report.total_part_counts.at("T0T1") == 4);
  CHECK(!t01.retried);
  CHECK(t01.discrepancy.empty());

  const auto ref = interval_reference("T0T1");
  REQUIRE(ref.has_value());
  CHECK(ref->above == 7);
  CHECK(ref->exact == 4);
  CHECK(!interval_reference("M").has_value());
}

TEST_CASE("the supported clone tables are consistent") {
  CHECK(clones_above("O") == std::vector<std::string>{"O"});
  CHECK(clones_above("T0").size() == 2);
  CHECK(clones_above("T0T1").size() == 4);
  CHECK(clones_above("MT0T1").size() == 8);
  CHECK(clones_above("ST0T1").size() == 6);
  for (const std::string base : {"O", "T0", "T1", "T0T1", "MT0T1", "ST0T1"}) {
    const auto& names = clones_above(base);
    CHECK(std::find(names.begin(), names.end(), base) != names.end());
    CHECK(std::find(names.begin(), names.end(), "O") != names.end());
    for (const std::string& name : names) CHECK(find_clone(name).name == name);
  }
  CHECK_THROWS_AS(clones_above("M"), Error);
  CHECK(candidate_entries("T0T1").size() == 4);

  CHECK(basis_family_names("T0T1", "auto") ==
        std::vector<std::string>({"P0", "P1", "P01"}));
  CHECK(basis_family_names("O", "minimal").empty());
  CHECK(basis_family_names("MT0T1", "auto") ==
        basis_family_names("MT0T1", "leq"));
  CHECK(basis_family_names("ST0T1", "auto") ==
        basis_family_names("ST0T1", "lambda"));
  CHECK(basis_family_names("MT0T1", "leq").size() == 7);
  CHECK(basis_family_names("ST0T1", "lambda").size() == 7);
  CHECK(basis_family_names("T0T1", "all") == appendix_relation_names());
  CHECK_THROWS_AS(basis_family_names("T0T1", "bogus"), Error);
  CHECK_THROWS_AS(basis_family_names("M", "minimal"), Error);
}

TEST_CASE("restrictions of the unconstrained clone give every partial function") {
  CHECK(str_fingerprint_of_clone({}, 3) == CloneFingerprint::all(3));

  const CloneFingerprint t0 = str_fingerprint_of_clone({appendix_relation("P0")}, 1);
  CHECK(t0.count(1) == 6);
  CHECK(t0.contains(encode_function(1, {{1, true}})));
  CHECK(!t0.contains(encode_function(1, {{0, true}})));
}

TEST_CASE("transfer unions clone restrictions with the blocked class") {
  const CloneFingerprint x = ppol_fingerprint({r02(3)}, 3);
  const CloneCatalogEntry d = default_transfer_clone();
  const RelationPair t = default_transfer_pair();
  const CloneFingerprint result = transfer(x, d, t, 3);

  CHECK(result.total_part() == pol_fingerprint(d.defining, 3));

  const PartialFunction or_restriction =
      encode_function(2, {{0b01, true}, {0b10, true}});
  const CloneFingerprint str_d = str_fingerprint_of_clone(d.defining, 3);
  CHECK(str_d.is_subset_of(result));
  CHECK(!str_d.contains(or_restriction));
  CHECK(result.contains(or_restriction));
}

TEST_CASE("transfer with the unconstrained clone returns the input") {
  const CloneFingerprint all = CloneFingerprint::all(3);
  CHECK(transfer(all, find_clone("O"), default_transfer_pair(), 3) == all);
}

TEST_CASE("transfer rejects a set that is not composition closed") {
  CloneFingerprint x(3);
  x.insert(encode_function(2, {{0b01, true}, {0b10, true}}));
  CHECK_THROWS_AS(
      transfer(x, default_transfer_clone(), default_transfer_pair(), 3), Error);
}

TEST_CASE("dot export lists every element and cover edge") {
  LatticeReport report = intersection_closure(zero_one_basis(), kZeroOneNames);
  classify_report(report, candidate_entries("T0T1"));
  const std::string dot = export_dot(report);
  CHECK(dot.find("digraph interval") != std::string::npos);
  CHECK(count_occurrences(dot, "[label=") == report.elements.size());
  CHECK(count_occurrences(dot, "->") == report.cover_pairs().size());
  CHECK(dot.find("pPol{P0,P1}\\nT0T1") != std::string::npos);
}
