// Copyright 2026 The countred Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace countred {

// One oracle query: the graph handed to the oracle (text format), the
// evaluation point, the oracle's answer and the value the reduction derived
// from it.
struct TranscriptEntry {
  std::string purpose;
  std::string graph;
  nlohmann::json point;
  std::string answer;
  std::string derived;

  nlohmann::json to_json(std::size_t index) const {
    return {{"index", index},   {"purpose", purpose}, {"graph", graph},
            {"point", point},   {"answer", answer},   {"derived", derived}};
  }

  static TranscriptEntry from_json(const nlohmann::json& j) {
    return {j.at("purpose").get<std::string>(), j.at("graph").get<std::string>(),
            j.at("point"), j.at("answer").get<std::string>(),
            j.at("derived").get<std::string>()};
  }
};

class OracleTranscript {
 public:
  void add(TranscriptEntry entry) { entries_.push_back(std::move(entry)); }
  std::size_t size() const { return entries_.size(); }
  const std::vector<TranscriptEntry>& entries() const { return entries_; }

  void write_jsonl(std::ostream& out) const {
    for (std::size_t i = 0; i < entries_.size(); ++i)
      out << entries_[i].to_json(i).dump() << '\n';
  }

  static OracleTranscript read_jsonl(std::istream& in) {
    OracleTranscript t;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      t.add(TranscriptEntry::from_json(nlohmann::json::parse(line)));
    }
    return t;
  }

 private:
  std::vector<TranscriptEntry> entries_;
};

}  // namespace countred
