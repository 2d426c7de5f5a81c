// io.hpp — instance files, JSON report serialization.
//
// Instance format: one example per line, comma-separated feature values; a
// labeled file carries the label (+1 or -1) as the last column. Blank lines
// and lines starting with '#' are skipped. Values are written with enough
// digits to round-trip exactly.
#pragma once

#include <string>

#include "disckit/core.hpp"
#include "disckit/disc.hpp"
#include "disckit/theory.hpp"

namespace disckit {

UnlabeledDataset load_unlabeled_instance(const std::string& path);
LabeledDataset load_labeled_instance(const std::string& path);

void save_unlabeled_instance(const UnlabeledDataset& d, const std::string& path);
void save_labeled_instance(const LabeledDataset& d, const std::string& path);

// JSON: {"measure", "value", "witness_params", "diagnostics", ...}.
std::string report_to_json(const DiscrepancyReport& rep);

// JSON with every additive term named as in the bound's display.
std::string bound_to_json(const BoundReport& rep);

std::string ranking_to_json(const SourceRanking& ranking);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace disckit
