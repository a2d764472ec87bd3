#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "meeksep/generators.hpp"
#include "meeksep/graph.hpp"
#include "meeksep/oracle.hpp"

namespace meeksep::io {

// Edge-list text format: first line "n m d", then m lines "u v D" for arcs
// and d lines "u v U" for undirected edges. 0-based ids, '#' comments and
// blank lines ignored. SEM files extend arc lines with a weight column
// ("u v D w") and append an "intercepts c0 ... c_{n-1}" trailer line.
// Instance files append a "targets <t>" section (t lines "u v") or a
// "shifts <k>" section (k lines "v a"), then "meta key=value" lines.

Pdag read_pdag(std::istream& in, const std::string& origin);
Pdag read_pdag(const std::filesystem::path& path);
void write_pdag(std::ostream& out, const Pdag& g);
void write_pdag(const std::filesystem::path& path, const Pdag& g);

Dag read_dag(std::istream& in, const std::string& origin);  // requires d == 0
Dag read_dag(const std::filesystem::path& path);
void write_dag(std::ostream& out, const Dag& g);
void write_dag(const std::filesystem::path& path, const Dag& g);

void write_subset_instance(std::ostream& out, const SubsetInstance& inst);
void write_subset_instance(const std::filesystem::path& path, const SubsetInstance& inst);
SubsetInstance read_subset_instance(std::istream& in, const std::string& origin);
SubsetInstance read_subset_instance(const std::filesystem::path& path);

void write_matching_instance(std::ostream& out, const MatchingInstance& inst);
void write_matching_instance(const std::filesystem::path& path, const MatchingInstance& inst);
MatchingInstance read_matching_instance(std::istream& in, const std::string& origin);
MatchingInstance read_matching_instance(const std::filesystem::path& path);

// Standalone shift assignments: one "v a" line per targeted vertex.
void write_shift_assignment(std::ostream& out, const ShiftAssignment& a);
void write_shift_assignment(const std::filesystem::path& path, const ShiftAssignment& a);
ShiftAssignment read_shift_assignment(std::istream& in, const std::string& origin);
ShiftAssignment read_shift_assignment(const std::filesystem::path& path);

/// Shortest round-trippable decimal form of a double.
std::string format_double(double x);

}  // namespace meeksep::io
