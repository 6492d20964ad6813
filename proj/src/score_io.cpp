// Copyright 2026 The tandem-eval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "teval/score_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "teval/error.hpp"

namespace teval {
namespace {

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_blank(line[i])) ++i;
    std::size_t start = i;
    while (i < line.size() && !is_blank(line[i])) ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

bool is_comment_or_blank(std::string_view line) {
  for (char c : line) {
    if (is_blank(c)) continue;
    return c == '#';
  }
  return true;
}

real parse_real(std::string_view token, std::size_t line_no) {
  std::string_view digits = token;
  if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
  real value = 0.0;
  auto [end, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || end != digits.data() + digits.size() ||
      digits.empty()) {
    throw ParseError(line_no,
                     "unparseable score '" + std::string(token) + "'");
  }
  if (!std::isfinite(value)) {
    throw ParseError(line_no,
                     "non-finite score '" + std::string(token) + "'");
  }
  return value;
}

// Calls fn(line_no, fields) for every data line.
template <typename Fn>
void for_each_record(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_comment_or_blank(line)) continue;
    fn(line_no, split_fields(line));
  }
}

void expect_fields(const std::vector<std::string_view>& fields,
                   std::size_t expected, std::size_t line_no) {
  if (fields.size() != expected) {
    throw ParseError(line_no, "expected " + std::to_string(expected) +
                                  " fields, found " +
                                  std::to_string(fields.size()));
  }
}

std::string join_ids(const std::vector<std::string>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size() && i < 10; ++i) {
    if (i > 0) out += ", ";
    out += ids[i];
  }
  if (ids.size() > 10) out += ", ...";
  return out;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCategory::kIo, "cannot open '" + path + "'");
  return in;
}

template <typename Parse>
auto parse_file(const std::string& path, Parse&& parse) {
  std::ifstream in = open_or_throw(path);
  try {
    return parse(in);
  } catch (const ParseError& e) {
    if (e.category() == ErrorCategory::kDuplicateId) {
      throw Error(ErrorCategory::kDuplicateId, path + ": " + e.what());
    }
    throw Error(ErrorCategory::kParse, path + ": " + e.what());
  }
}

}  // namespace

std::string_view to_string(TrialClass c) {
  switch (c) {
    case TrialClass::kTarget: return "target";
    case TrialClass::kNonTarget: return "nontarget";
    case TrialClass::kSpoof: return "spoof";
  }
  return "?";
}

std::optional<TrialClass> parse_trial_class(std::string_view token) {
  if (token == "target") return TrialClass::kTarget;
  if (token == "nontarget") return TrialClass::kNonTarget;
  if (token == "spoof") return TrialClass::kSpoof;
  return std::nullopt;
}

std::vector<ScoreRecord> parse_scores(std::istream& in) {
  std::vector<ScoreRecord> records;
  std::unordered_set<std::string> seen;
  for_each_record(in, [&](std::size_t line_no, const auto& fields) {
    expect_fields(fields, 2, line_no);
    std::string id(fields[0]);
    real score = parse_real(fields[1], line_no);
    if (!seen.insert(id).second) throw DuplicateIdError(line_no, id);
    records.push_back({std::move(id), score});
  });
  return records;
}

std::vector<ScoreRecord> parse_scores(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_scores(in);
}

KeyMap parse_keys(std::istream& in) {
  KeyMap keys;
  for_each_record(in, [&](std::size_t line_no, const auto& fields) {
    expect_fields(fields, 2, line_no);
    auto cls = parse_trial_class(fields[1]);
    if (!cls) {
      throw ParseError(line_no, "unknown class '" + std::string(fields[1]) +
                                    "' (expected target, nontarget or spoof)");
    }
    std::string id(fields[0]);
    if (!keys.emplace(id, *cls).second) throw DuplicateIdError(line_no, id);
  });
  return keys;
}

KeyMap parse_keys(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_keys(in);
}

std::vector<ScoreRecord> parse_asvspoof2019_cm(std::istream& in) {
  std::vector<ScoreRecord> records;
  std::unordered_set<std::string> seen;
  for_each_record(in, [&](std::size_t line_no, const auto& fields) {
    expect_fields(fields, 5, line_no);
    if (fields[3] != "bonafide" && fields[3] != "spoof") {
      throw ParseError(line_no, "unknown CM key '" + std::string(fields[3]) +
                                    "' (expected bonafide or spoof)");
    }
    std::string id(fields[1]);
    real score = parse_real(fields[4], line_no);
    if (!seen.insert(id).second) throw DuplicateIdError(line_no, id);
    records.push_back({std::move(id), score});
  });
  return records;
}

std::vector<ScoreRecord> read_scores_file(const std::string& path,
                                          bool asvspoof2019) {
  return parse_file(path, [&](std::istream& in) {
    return asvspoof2019 ? parse_asvspoof2019_cm(in) : parse_scores(in);
  });
}

KeyMap read_keys_file(const std::string& path) {
  return parse_file(path, [](std::istream& in) { return parse_keys(in); });
}

std::string format_real(real value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, end);
}

std::string serialize_scores(const std::vector<ScoreRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    out += r.trial_id;
    out += ' ';
    out += format_real(r.score);
    out += '\n';
  }
  return out;
}

std::string serialize_keys(const KeyMap& keys) {
  std::string out;
  for (const auto& [id, cls] : keys) {
    out += id;
    out += ' ';
    out += to_string(cls);
    out += '\n';
  }
  return out;
}

TrialTable::TrialTable(std::vector<TrialRow> rows) : rows_(std::move(rows)) {
  std::unordered_set<std::string_view> seen;
  seen.reserve(rows_.size());
  for (const auto& row : rows_) {
    if (!seen.insert(row.trial_id).second) {
      throw Error(ErrorCategory::kDuplicateId,
                  "duplicate trial id '" + row.trial_id + "' in table");
    }
    ++counts_[static_cast<std::size_t>(row.trial_class)];
  }
}

VectorXr TrialTable::cm_scores(TrialClass c) const {
  VectorXr out(static_cast<Eigen::Index>(count(c)));
  Eigen::Index k = 0;
  for (const auto& row : rows_) {
    if (row.trial_class == c) out[k++] = row.cm_score;
  }
  return out;
}

VectorXr TrialTable::asv_scores(TrialClass c) const {
  VectorXr out(static_cast<Eigen::Index>(count(c)));
  Eigen::Index k = 0;
  for (const auto& row : rows_) {
    if (row.trial_class == c) out[k++] = row.asv_score;
  }
  return out;
}

VectorXr TrialTable::bona_fide_cm_scores() const {
  VectorXr out(static_cast<Eigen::Index>(num_target() + num_nontarget()));
  Eigen::Index k = 0;
  for (const auto& row : rows_) {
    if (is_bona_fide(row.trial_class)) out[k++] = row.cm_score;
  }
  return out;
}

TrialTable TrialTable::filter(std::initializer_list<TrialClass> classes) const {
  std::vector<TrialRow> kept;
  for (const auto& row : rows_) {
    if (std::find(classes.begin(), classes.end(), row.trial_class) !=
        classes.end()) {
      kept.push_back(row);
    }
  }
  return TrialTable(std::move(kept));
}

namespace {

std::map<std::string_view, real> index_scores(
    const std::vector<ScoreRecord>& records) {
  std::map<std::string_view, real> index;
  for (const auto& r : records) index.emplace(r.trial_id, r.score);
  return index;
}

// Throws a join error when the id sets of the named sides differ.
void check_identical_ids(
    const std::vector<std::pair<std::string, std::set<std::string_view>>>&
        sides) {
  std::set<std::string_view> all;
  for (const auto& [name, ids] : sides) all.insert(ids.begin(), ids.end());
  std::string message;
  for (const auto& [name, ids] : sides) {
    std::vector<std::string> missing;
    for (auto id : all) {
      if (!ids.count(id)) missing.emplace_back(id);
    }
    if (missing.empty()) continue;
    if (!message.empty()) message += "; ";
    message += name + " missing " + std::to_string(missing.size()) +
               " id(s): " + join_ids(missing);
  }
  if (!message.empty()) {
    throw Error(ErrorCategory::kJoin, "strict join failed: " + message);
  }
}

template <typename Map>
std::set<std::string_view> key_set(const Map& m) {
  std::set<std::string_view> out;
  for (const auto& kv : m) out.insert(kv.first);
  return out;
}

}  // namespace

TrialTable join(const std::vector<ScoreRecord>& cm,
                const std::vector<ScoreRecord>& asv, const KeyMap& keys,
                JoinMode mode) {
  auto cm_index = index_scores(cm);
  auto asv_index = index_scores(asv);
  if (mode == JoinMode::kStrict) {
    check_identical_ids({{"cm scores", key_set(cm_index)},
                         {"asv scores", key_set(asv_index)},
                         {"keys", key_set(keys)}});
  }
  std::vector<TrialRow> rows;
  for (const auto& [id, cls] : keys) {
    auto c = cm_index.find(id);
    auto a = asv_index.find(id);
    if (c == cm_index.end() || a == asv_index.end()) continue;
    rows.push_back({id, cls, c->second, a->second});
  }
  if (rows.empty()) {
    throw Error(ErrorCategory::kEmptyTable,
                "no trial id is shared by the cm scores, asv scores and keys");
  }
  return TrialTable(std::move(rows));
}

std::vector<real> ClassScores::bona_fide() const {
  std::vector<real> out = (*this)[TrialClass::kTarget];
  const auto& non = (*this)[TrialClass::kNonTarget];
  out.insert(out.end(), non.begin(), non.end());
  return out;
}

ClassScores split_by_class(const std::vector<ScoreRecord>& scores,
                           const KeyMap& keys, JoinMode mode) {
  auto index = index_scores(scores);
  if (mode == JoinMode::kStrict) {
    check_identical_ids({{"scores", key_set(index)}, {"keys", key_set(keys)}});
  }
  ClassScores out;
  std::size_t n = 0;
  for (const auto& [id, cls] : keys) {
    auto it = index.find(id);
    if (it == index.end()) continue;
    out.by_class[static_cast<std::size_t>(cls)].push_back(it->second);
    ++n;
  }
  if (n == 0) {
    throw Error(ErrorCategory::kEmptyTable,
                "no trial id is shared by the scores and keys");
  }
  return out;
}

std::string serialize_table(const TrialTable& table) {
  std::string out;
  for (const auto& row : table.rows()) {
    out += row.trial_id;
    out += ' ';
    out += to_string(row.trial_class);
    out += ' ';
    out += format_real(row.cm_score);
    out += ' ';
    out += format_real(row.asv_score);
    out += '\n';
  }
  return out;
}

}  // namespace teval
