#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "proc2bpmn/extraction.hpp"

namespace proc2bpmn {

/// Hierarchical row id: `3` or `3a1` (sequence 3, branch a, step 1).
struct OrderLabel {
  unsigned seq = 0;
  std::optional<char> branch;
  std::optional<unsigned> step;  // present iff branch is

  bool branched() const { return branch.has_value(); }
  std::string to_string() const;

  friend auto operator<=>(const OrderLabel&, const OrderLabel&) = default;
  friend bool operator==(const OrderLabel&, const OrderLabel&) = default;
};

/// Grammar `digits [letter digits]`, no leading zeros, step >= 1.
OrderLabel parse_order_label(std::string_view text);

struct TableRow {
  OrderLabel order;
  std::string activity;
  std::string condition;
  std::string who;
  bool terminated = false;

  friend bool operator==(const TableRow&, const TableRow&) = default;
};

/// Activity of a branch row that ends the process inside the branch instead
/// of rejoining.
inline constexpr std::string_view kBranchEndMarker = "end";
inline constexpr std::string_view kStartActivity = "start";
inline constexpr std::string_view kCsvHeader = "Order,Activity,Condition,Who,Terminated";

struct ProcessTable {
  std::vector<TableRow> rows;

  friend bool operator==(const ProcessTable&, const ProcessTable&) = default;
};

/// Every broken table invariant, one message each; empty for a valid table.
/// A table without rows is considered valid here (it fails later, in
/// build_model, with EmptyProcess).
std::vector<std::string> table_violations(const ProcessTable& table);
/// Throws TableInvariantError listing the violations.
void check_table(const ProcessTable& table);

/// "Inform Affairs Department": title-cased verb plus determiner-free,
/// title-cased object phrase.
std::string format_activity(const SvoTriple& triple);

/// Row 0 is "start"; unguarded triples get successive sequence numbers; a
/// conditional and its sibling share one sequence number as branches a/b; a
/// conditional without sibling gets a skip branch (empty activity) carrying
/// the complement condition; the last row is terminated.  Triples of the
/// termination sentence become in-branch end markers when guarded and are
/// dropped otherwise.  Throws EmptyProcess when no row would hold an activity.
ProcessTable build_table(const std::vector<SvoTriple>& triples, const std::vector<ConditionAttachment>& conditions,
                         std::optional<int> termination, const ParticipantRegistry& registry);

/// Header `Order,Activity,Condition,Who,Terminated`, RFC-4180 quoting only
/// where needed, LF line endings, no BOM.
std::string serialize_csv(const ProcessTable& table);
/// Throws CsvSchemaError, BadOrderLabel or TableInvariantError.
ProcessTable parse_csv(std::string_view bytes);

}  // namespace proc2bpmn
