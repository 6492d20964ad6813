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

#ifndef TEVAL_SCORE_IO_HPP
#define TEVAL_SCORE_IO_HPP

#include <array>
#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "teval/types.hpp"

namespace teval {

enum class TrialClass { kTarget = 0, kNonTarget = 1, kSpoof = 2 };

inline constexpr std::array<TrialClass, 3> kAllClasses = {
    TrialClass::kTarget, TrialClass::kNonTarget, TrialClass::kSpoof};

inline bool is_bona_fide(TrialClass c) { return c != TrialClass::kSpoof; }

// "target" | "nontarget" | "spoof"
std::string_view to_string(TrialClass c);
std::optional<TrialClass> parse_trial_class(std::string_view token);

struct ScoreRecord {
  std::string trial_id;
  real score = 0.0;

  bool operator==(const ScoreRecord&) const = default;
};

using KeyMap = std::map<std::string, TrialClass>;

// Canonical score file: "<trial_id> <score>" per line. Fields may be
// separated by any run of spaces or tabs; '#' starts a comment line.
std::vector<ScoreRecord> parse_scores(std::istream& in);
std::vector<ScoreRecord> parse_scores(std::string_view text);

// Canonical key file: "<trial_id> <class>".
KeyMap parse_keys(std::istream& in);
KeyMap parse_keys(std::string_view text);

// ASVspoof 2019 LA countermeasure score files carry five columns:
// "<speaker> <utterance> <system> <bonafide|spoof> <score>". The utterance
// becomes the trial id; the class always comes from the key file.
std::vector<ScoreRecord> parse_asvspoof2019_cm(std::istream& in);

std::vector<ScoreRecord> read_scores_file(const std::string& path,
                                          bool asvspoof2019 = false);
KeyMap read_keys_file(const std::string& path);

// Shortest decimal string that parses back to the same double.
std::string format_real(real value);

std::string serialize_scores(const std::vector<ScoreRecord>& records);
std::string serialize_keys(const KeyMap& keys);

struct TrialRow {
  std::string trial_id;
  TrialClass trial_class = TrialClass::kTarget;
  real cm_score = 0.0;
  real asv_score = 0.0;

  bool operator==(const TrialRow&) const = default;
};

enum class JoinMode { kStrict, kIntersection };

// Immutable joined view of CM scores, ASV scores and trial classes.
class TrialTable {
 public:
  TrialTable() = default;
  // Throws on duplicate trial ids.
  explicit TrialTable(std::vector<TrialRow> rows);

  const std::vector<TrialRow>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  std::size_t count(TrialClass c) const {
    return counts_[static_cast<std::size_t>(c)];
  }
  std::size_t num_target() const { return count(TrialClass::kTarget); }
  std::size_t num_nontarget() const { return count(TrialClass::kNonTarget); }
  std::size_t num_spoof() const { return count(TrialClass::kSpoof); }

  VectorXr cm_scores(TrialClass c) const;
  VectorXr asv_scores(TrialClass c) const;
  // Target and nontarget CM scores together.
  VectorXr bona_fide_cm_scores() const;

  // Rows of the given classes only.
  TrialTable filter(std::initializer_list<TrialClass> classes) const;

 private:
  std::vector<TrialRow> rows_;
  std::array<std::size_t, 3> counts_{};
};

TrialTable join(const std::vector<ScoreRecord>& cm,
                const std::vector<ScoreRecord>& asv, const KeyMap& keys,
                JoinMode mode = JoinMode::kStrict);

// Scores of one subsystem split by class; used when only one score file is
// at hand. Same strict/intersection semantics as join().
struct ClassScores {
  std::array<std::vector<real>, 3> by_class;

  const std::vector<real>& operator[](TrialClass c) const {
    return by_class[static_cast<std::size_t>(c)];
  }
  std::vector<real> bona_fide() const;
};

ClassScores split_by_class(const std::vector<ScoreRecord>& scores,
                           const KeyMap& keys,
                           JoinMode mode = JoinMode::kStrict);

// "<trial_id> <class> <cm_score> <asv_score>" per row.
std::string serialize_table(const TrialTable& table);

}  // namespace teval

#endif  // TEVAL_SCORE_IO_HPP
