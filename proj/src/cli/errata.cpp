/*
   Copyright 2026 The divsigma Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <fstream>
#include <stdexcept>

#include "harness.hpp"

namespace divsigma::cli {

// ---- Errata ledger -------------------------------------------------------

Json ErrataEntry::to_json() const {
    return Json{{"location", location},
                {"printed_form", printed_form},
                {"tested_form", tested_form},
                {"verdict", verdict},
                {"evidence", evidence}};
}

ErrataEntry ErrataEntry::from_json(const Json& j) {
    return {j.at("location").get<std::string>(), j.at("printed_form").get<std::string>(),
            j.at("tested_form").get<std::string>(), j.at("verdict").get<std::string>(),
            j.at("evidence").get<std::string>()};
}

ErrataLedger ErrataLedger::load(const std::string& path) {
    ErrataLedger ledger;
    std::ifstream in(path);
    if (!in) return ledger;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            ledger.entries_.push_back(ErrataEntry::from_json(Json::parse(line)));
        } catch (const std::exception& e) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": malformed ledger line: " + e.what());
        }
    }
    return ledger;
}

ErrataLedger::AppendResult ErrataLedger::append(const ErrataEntry& entry) {
    if (const ErrataEntry* existing = find(entry.location))
        return *existing == entry ? AppendResult::Unchanged : AppendResult::Conflict;
    entries_.push_back(entry);
    return AppendResult::Added;
}

const ErrataEntry* ErrataLedger::find(const std::string& location) const {
    for (const auto& e : entries_)
        if (e.location == location) return &e;
    return nullptr;
}

void ErrataLedger::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write ledger '" + path + "'");
    for (const auto& e : entries_) out << e.to_json().dump() << '\n';
}

}  // namespace divsigma::cli
