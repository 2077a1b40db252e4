// Copyright 2019 DeepMind Technologies Ltd. All rights reserved.
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

#ifndef REGRETLAB_TOOLS_TRACE_IO_H_
#define REGRETLAB_TOOLS_TRACE_IO_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "regretlab/bounds.h"
#include "regretlab/run.h"
#include "regretlab/types.h"

namespace regretlab::cli {

// Shortest decimal that parses back to the same double; "nan", "inf" and
// "-inf" for non-finite values.
std::string FormatDouble(double value);

// Payoff CSV with header "t,x_1,...,x_N" and rows numbered 1..n.
// Throws InputError on malformed content.
PayoffSequence ParsePayoffCsv(std::istream& in);
PayoffSequence ReadPayoffCsv(const std::string& path);
void WritePayoffCsv(const PayoffSequence& payoffs, std::ostream& out);

// Columns: t, x_1..x_N, p_1..p_N, xhat, Xstar, regret, VarZ, E_t, M_t,
// Qstar, epoch.
void WriteTraceCsv(const RunTrace& trace, std::ostream& out);

nlohmann::ordered_json ReportJson(const BoundReport& report);
nlohmann::ordered_json SummaryJson(const RunTrace& trace,
                                   const std::string& source,
                                   const std::vector<BoundReport>& reports);

// Writes to a sibling temporary file and renames it into place.
// Throws InputError on IO failure.
void WriteFileAtomic(const std::string& path, const std::string& contents);

}  // namespace regretlab::cli

#endif  // REGRETLAB_TOOLS_TRACE_IO_H_
