#include "proc2bpmn/process_table.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "proc2bpmn/error.hpp"

namespace proc2bpmn {

std::string OrderLabel::to_string() const {
  std::string out = std::to_string(seq);
  if (branch) out += *branch + std::to_string(step.value_or(1));
  return out;
}

OrderLabel parse_order_label(std::string_view text) {
  auto fail = [&](const char* why) -> OrderLabel {
    throw BadOrderLabel("order label '" + std::string(text) + "': " + why);
  };
  auto read_number = [](std::string_view digits, unsigned& value) {
    if (digits.empty() || (digits.size() > 1 && digits.front() == '0') || digits.size() > 9) return false;
    value = 0;
    for (char c : digits) value = value * 10 + static_cast<unsigned>(c - '0');
    return true;
  };

  if (text.empty()) return fail("empty");
  std::size_t i = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i == 0) return fail("must start with a digit");

  OrderLabel label;
  if (!read_number(text.substr(0, i), label.seq)) return fail("bad sequence number");
  if (i == text.size()) return label;

  const char letter = text[i];
  if (letter < 'a' || letter > 'z') return fail("branch must be a letter a-z");
  const std::string_view rest = text.substr(i + 1);
  if (rest.empty()) return fail("branch letter without step");
  if (!std::all_of(rest.begin(), rest.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    return fail("step must be digits");
  }
  unsigned step = 0;
  if (!read_number(rest, step) || step == 0) return fail("step must be a positive number");
  label.branch = letter;
  label.step = step;
  return label;
}

// ---------------------------------------------------------------------------

std::vector<std::string> table_violations(const ProcessTable& table) {
  std::vector<std::string> out;
  const auto& rows = table.rows;
  if (rows.empty()) return out;

  auto at = [](const TableRow& row) { return "row " + row.order.to_string() + ": "; };

  const auto starts = std::count_if(rows.begin(), rows.end(), [](const TableRow& r) { return r.activity == kStartActivity; });
  if (starts != 1) out.push_back("expected exactly one 'start' row, found " + std::to_string(starts));
  if (rows.front().activity != kStartActivity || rows.front().order.branched()) {
    out.push_back("the first row must be the unbranched 'start' row");
  }

  const auto terminated = std::count_if(rows.begin(), rows.end(), [](const TableRow& r) { return r.terminated; });
  if (terminated > 1) out.push_back("more than one terminated row");

  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (!(rows[i - 1].order < rows[i].order)) {
      out.push_back(at(rows[i]) + (rows[i - 1].order == rows[i].order ? "duplicate order label" : "rows out of order"));
    }
  }

  // seq -> branch -> steps
  std::map<unsigned, std::map<char, std::vector<const TableRow*>>> branches;
  std::set<unsigned> plain;
  for (const TableRow& row : rows) {
    if (row.order.branched()) {
      branches[row.order.seq][*row.order.branch].push_back(&row);
    } else {
      plain.insert(row.order.seq);
    }
  }

  for (std::size_t i = 0; i < rows.size(); ++i) {
    const TableRow& row = rows[i];
    if (row.terminated) {
      if (i + 1 != rows.size()) out.push_back(at(row) + "terminated row must be last");
      if (row.order.branched()) out.push_back(at(row) + "terminated row cannot be in a branch");
      if (!row.activity.empty() || !row.condition.empty()) {
        out.push_back(at(row) + "terminated row must have empty activity and condition");
      }
      continue;
    }
    if (!row.order.branched()) {
      if (!row.condition.empty()) out.push_back(at(row) + "condition outside a branch");
      if (row.activity.empty()) out.push_back(at(row) + "empty activity");
      if (row.activity == kBranchEndMarker) out.push_back(at(row) + "'end' marker outside a branch");
    }
  }

  const unsigned last_open_seq = [&] {
    unsigned last = 0;
    for (const TableRow& row : rows) {
      if (!row.terminated) last = std::max(last, row.order.seq);
    }
    return last;
  }();

  for (const auto& [seq, by_letter] : branches) {
    const std::string where = "seq " + std::to_string(seq) + ": ";
    if (plain.contains(seq)) out.push_back(where + "both plain and branched rows");
    if (by_letter.size() < 2) out.push_back(where + "a branched step needs at least two branches");
    bool any_rejoins = false;
    for (const auto& [letter, steps] : by_letter) {
      const std::string branch = where + "branch " + std::string(1, letter) + ": ";
      for (std::size_t k = 0; k < steps.size(); ++k) {
        if (steps[k]->order.step != k + 1) {
          out.push_back(branch + "steps must run 1..k without gaps");
          break;
        }
      }
      const TableRow& first = *steps.front();
      if (first.condition.empty()) out.push_back(branch + "first step has no condition");
      for (std::size_t k = 1; k < steps.size(); ++k) {
        if (!steps[k]->condition.empty()) out.push_back(branch + "condition on a step other than the first");
      }
      const bool skip = steps.size() == 1 && first.activity.empty();
      for (std::size_t k = 0; k < steps.size(); ++k) {
        if (steps[k]->activity.empty() && !skip) out.push_back(branch + "empty activity");
        if (steps[k]->activity == kBranchEndMarker && k + 1 != steps.size()) {
          out.push_back(branch + "'end' marker must be the last step");
        }
      }
      if (steps.back()->activity != kBranchEndMarker) any_rejoins = true;
    }
    if (!any_rejoins && seq < last_open_seq) out.push_back(where + "every branch ends but later rows follow");
  }
  return out;
}

void check_table(const ProcessTable& table) {
  const std::vector<std::string> violations = table_violations(table);
  if (violations.empty()) return;
  std::string message;
  for (const std::string& v : violations) message += (message.empty() ? "" : "; ") + v;
  throw TableInvariantError(message);
}

// ---------------------------------------------------------------------------

std::string format_activity(const SvoTriple& triple) {
  std::string out = title_case(triple.verb_lemma);
  const std::string object = title_case(strip_determiners(triple.object_phrase));
  if (!object.empty()) out += ' ' + object;
  return out;
}

ProcessTable build_table(const std::vector<SvoTriple>& triples, const std::vector<ConditionAttachment>& conditions,
                         std::optional<int> termination, const ParticipantRegistry& registry) {
  auto ends_process = [&](std::size_t i) { return termination && triples[i].sentence == *termination; };
  auto who_of = [&](std::size_t i) -> std::string {
    const auto& subject = triples[i].subject;
    return subject && registry.by_name(*subject) != nullptr ? *subject : std::string{};
  };

  std::map<std::size_t, std::size_t> guard;  // triple -> attachment
  for (std::size_t a = 0; a < conditions.size(); ++a) {
    for (std::size_t t : conditions[a].governed) {
      if (t < triples.size()) guard.emplace(t, a);
    }
  }

  struct Step {
    std::string activity;
    std::string who;
  };
  struct Branch {
    std::string condition;
    std::vector<Step> steps;
    bool ends = false;
  };

  auto branch_for = [&](const ConditionAttachment& attachment) {
    Branch branch;
    branch.condition = attachment.condition_text;
    for (std::size_t t : attachment.governed) {
      if (t >= triples.size()) continue;
      if (ends_process(t)) {
        branch.ends = true;
      } else {
        branch.steps.push_back({format_activity(triples[t]), who_of(t)});
      }
    }
    return branch;
  };

  ProcessTable table;
  table.rows.push_back({OrderLabel{0, {}, {}}, std::string(kStartActivity), "", "", false});
  unsigned seq = 1;
  std::set<std::size_t> consumed;
  bool any_activity = false;

  for (std::size_t i = 0; i < triples.size(); ++i) {
    if (consumed.contains(i)) continue;
    auto guarded = guard.find(i);
    if (guarded == guard.end()) {
      if (ends_process(i)) continue;
      table.rows.push_back({OrderLabel{seq++, {}, {}}, format_activity(triples[i]), "", who_of(i), false});
      any_activity = true;
      continue;
    }

    const ConditionAttachment& first = conditions[guarded->second];
    std::vector<const ConditionAttachment*> members{&first};
    if (first.polarity_sibling && *first.polarity_sibling < conditions.size()) {
      members.push_back(&conditions[*first.polarity_sibling]);
    }
    std::vector<Branch> branches;
    for (const ConditionAttachment* member : members) {
      branches.push_back(branch_for(*member));
      for (std::size_t t : member->governed) consumed.insert(t);
    }
    if (branches.size() == 1) branches.push_back(Branch{first.complement_text, {}, false});

    bool follows = false;
    for (std::size_t j = i + 1; j < triples.size() && !follows; ++j) {
      follows = !consumed.contains(j) && !ends_process(j);
    }
    if (follows && std::all_of(branches.begin(), branches.end(), [](const Branch& b) { return b.ends; })) {
      branches.back().ends = false;  // the process has to continue somewhere
    }

    char letter = 'a';
    for (Branch& branch : branches) {
      if (branch.condition.empty()) branch.condition = "otherwise";
      unsigned step = 1;
      if (branch.steps.empty() && !branch.ends) {
        table.rows.push_back({OrderLabel{seq, letter, 1}, "", branch.condition, "", false});
      }
      for (const Step& s : branch.steps) {
        table.rows.push_back(
            {OrderLabel{seq, letter, step}, s.activity, step == 1 ? branch.condition : "", s.who, false});
        ++step;
        any_activity = true;
      }
      if (branch.ends) {
        table.rows.push_back(
            {OrderLabel{seq, letter, step}, std::string(kBranchEndMarker), step == 1 ? branch.condition : "", "", false});
      }
      ++letter;
    }
    ++seq;
  }

  if (!any_activity) throw EmptyProcess("no activity could be extracted");
  table.rows.push_back({OrderLabel{seq, {}, {}}, "", "", "", true});
  return table;
}

// ---------------------------------------------------------------------------

namespace {

std::string escape_field(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::vector<std::string>> read_records(std::string_view bytes) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  std::size_t i = 0;

  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(record));
    record.clear();
  };

  while (i < bytes.size()) {
    const char c = bytes[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < bytes.size() && bytes[i + 1] == '"') {
          field += '"';
          i += 2;
          continue;
        }
        quoted = false;
        ++i;
        if (i < bytes.size() && bytes[i] != ',' && bytes[i] != '\n' && bytes[i] != '\r') {
          throw CsvSchemaError("CSV record " + std::to_string(records.size() + 1) + ": text after closing quote");
        }
        continue;
      }
      field += c;
      ++i;
      continue;
    }
    if (c == '"' && !field_started && field.empty()) {
      quoted = true;
      field_started = true;
      ++i;
    } else if (c == ',') {
      end_field();
      ++i;
    } else if (c == '\n' || c == '\r') {
      end_record();
      i += (c == '\r' && i + 1 < bytes.size() && bytes[i + 1] == '\n') ? 2 : 1;
    } else {
      field += c;
      field_started = true;
      ++i;
    }
  }
  if (quoted) throw CsvSchemaError("CSV: unterminated quoted field");
  if (field_started || !field.empty() || !record.empty()) end_record();
  return records;
}

}  // namespace

std::string serialize_csv(const ProcessTable& table) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const TableRow& row : table.rows) {
    out += escape_field(row.order.to_string());
    out += ',';
    out += escape_field(row.activity);
    out += ',';
    out += escape_field(row.condition);
    out += ',';
    out += escape_field(row.who);
    out += ',';
    out += row.terminated ? "yes" : "";
    out += '\n';
  }
  return out;
}

ProcessTable parse_csv(std::string_view bytes) {
  if (bytes.starts_with("\xEF\xBB\xBF")) bytes.remove_prefix(3);
  const auto records = read_records(bytes);
  if (records.empty()) throw CsvSchemaError("CSV is empty; expected header '" + std::string(kCsvHeader) + "'");

  const std::vector<std::string> header = records.front();
  std::string joined;
  for (std::size_t i = 0; i < header.size(); ++i) joined += (i ? "," : "") + header[i];
  if (joined != kCsvHeader) {
    throw CsvSchemaError("CSV header is '" + joined + "', expected '" + std::string(kCsvHeader) + "'");
  }

  ProcessTable table;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& fields = records[r];
    if (fields.size() == 1 && fields.front().empty()) continue;  // blank line
    if (fields.size() != 5) {
      throw CsvSchemaError("CSV record " + std::to_string(r + 1) + ": expected 5 fields, found " +
                           std::to_string(fields.size()));
    }
    TableRow row;
    row.order = parse_order_label(fields[0]);
    row.activity = fields[1];
    row.condition = fields[2];
    row.who = fields[3];
    if (fields[4] == "yes") {
      row.terminated = true;
    } else if (!fields[4].empty()) {
      throw CsvSchemaError("CSV record " + std::to_string(r + 1) + ": Terminated must be 'yes' or empty, found '" +
                           fields[4] + "'");
    }
    table.rows.push_back(std::move(row));
  }
  check_table(table);
  return table;
}

}  // namespace proc2bpmn
