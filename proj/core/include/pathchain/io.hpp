#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pathchain/chains.hpp"
#include "pathchain/embedding.hpp"
#include "pathchain/geometry.hpp"
#include "pathchain/ising.hpp"
#include "pathchain/maxent.hpp"
#include "pathchain/targets.hpp"

namespace pathchain::io {

// Dense CSV: first column is an opaque id, remaining columns are reals. A
// header row is optional and detected when the first non-empty line starts
// with "id" or has a non-id field that fails to parse as a number. Errors carry 1-based line numbers.

struct ReadOptions {
    std::vector<std::string> exclude_columns;   // dropped by header name
    std::optional<std::string> label_column;    // kept as string labels
};

struct Table {
    std::vector<std::string> columns;  // value column names ("c1", ... without header)
    std::vector<std::string> ids;
    Matrix values;
    std::optional<std::vector<std::string>> labels;
    bool had_header = false;
};

Table read_table(std::istream& in, const ReadOptions& options = {});
Table read_table(const std::filesystem::path& path, const ReadOptions& options = {});

/// Selects one named value column of a table.
Vector column(const Table& table, const std::string& name);

PointCloud read_point_cloud(const std::filesystem::path& path, const ReadOptions& options = {});

/// Shortest round-trip decimal representation.
std::string format_double(double value);

/// Square matrix with an id header row and id first column.
void write_matrix(std::ostream& out, const std::vector<std::string>& ids, const Matrix& m);
void write_matrix(const std::filesystem::path& path, const std::vector<std::string>& ids, const Matrix& m);

struct LabelledMatrix {
    std::vector<std::string> ids;
    Matrix values;
};
/// Reads a square id-labelled matrix. Header ids must match row ids.
LabelledMatrix read_matrix(const std::filesystem::path& path);

/// Two-column "id,<value_name>" file.
void write_vector(const std::filesystem::path& path, const std::vector<std::string>& ids, const Vector& v,
                  const std::string& value_name);

struct LabelledVector {
    std::vector<std::string> ids;
    Vector values;
};
LabelledVector read_vector(const std::filesystem::path& path);

void write_chain(const std::filesystem::path& q_path, const std::filesystem::path& p_path,
                 const std::vector<std::string>& ids, const MarkovChain& chain);
/// Reads a chain from its q and p files; the result is tagged external and
/// flagged reversible so that validate() audits detailed balance.
MarkovChain read_chain(const std::filesystem::path& q_path, const std::filesystem::path& p_path,
                       std::vector<std::string>* ids = nullptr);

void write_target(const std::filesystem::path& path, const std::vector<std::string>& ids,
                  const StationaryTarget& target);
/// Custom target file; ids must match `expected_ids` when given, in any order
/// (the result is permuted into `expected_ids` order).
StationaryTarget read_target(const std::filesystem::path& path,
                             const std::vector<std::string>* expected_ids = nullptr);

/// "id,D1..Dm"
void write_embedding(const std::filesystem::path& path, const std::vector<std::string>& ids,
                     const Embedding& embedding);

/// "id,energy,magnetization,s0..s{L^2-1}"; ids are 0-based sample indices.
void write_ising(std::ostream& out, const IsingSample& sample);
void write_ising(const std::filesystem::path& path, const IsingSample& sample);

nlohmann::json to_json(const ChainReport& report);
nlohmann::json to_json(const Embedding& embedding);
nlohmann::json to_json(const SolverTelemetry& telemetry);

}  // namespace pathchain::io
