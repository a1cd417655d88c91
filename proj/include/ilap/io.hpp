#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ilap/graph.hpp"
#include "ilap/point_cloud.hpp"

namespace ilap::io {

// Plain CSV: comma separated, '#' starts a comment line, blank lines are
// skipped, and a first row with non-numeric fields is treated as a header.
// Malformed rows raise ErrorKind::Parse with the 1-based line number.

PointCloud read_points_csv(const std::filesystem::path& path);
void write_points_csv(const std::filesystem::path& path, const PointCloud& cloud);

/// Little-endian cache: "ILPC", u32 version, u64 count, u64 dim, then the
/// row-major doubles.
PointCloud read_points_binary(const std::filesystem::path& path);
void write_points_binary(const std::filesystem::path& path, const PointCloud& cloud);

/// Rows (i, j, w_ij). Edges are returned as read; use WeightGraph::from_edges.
std::vector<Edge> read_edges_csv(const std::filesystem::path& path);
void write_graph_csv(const std::filesystem::path& path, const WeightGraph& graph);

/// Rows (i, value).
std::vector<std::pair<Index, double>> read_labels_csv(const std::filesystem::path& path);
void write_labels_csv(const std::filesystem::path& path,
                      const std::vector<std::pair<Index, double>>& labels);

/// Rows (i, u_i) with a header line.
void write_solution_csv(const std::filesystem::path& path, const std::vector<double>& u);
std::vector<double> read_solution_csv(const std::filesystem::path& path);

/// Parses CSV rows of numbers from a stream, `columns` fields per row.
std::vector<std::vector<double>> read_numeric_rows(std::istream& in, std::size_t columns,
                                                   const std::string& source);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& bytes);

}  // namespace ilap::io
