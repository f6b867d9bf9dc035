#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "causal/model.hpp"

namespace causal {

// One line of count output: "<labels joined by ','>\t<length>\t<count>".
struct OutputRecord {
  std::string path;  // escaped, comma-joined labels
  std::size_t length = 0;
  Count count = 0;
};

// Escapes '\' as "\\" and ',' as "\,".
std::string escape_label(std::string_view label);
std::vector<std::string> split_escaped_path(std::string_view joined);

std::string format_path(const Path& p, const NodeTable& table);

// Records ordered by length, then by the label sequence. The ordering does
// not depend on how labels were interned.
std::vector<OutputRecord> output_records(const PathCountMap& counts, const NodeTable& table);

void write_path_counts(std::ostream& out, const PathCountMap& counts, const NodeTable& table);

// Parses output produced by write_path_counts; labels are interned into table.
PathCountMap read_path_counts(std::istream& in, NodeTable& table);

}  // namespace causal
