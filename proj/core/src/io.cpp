#include "pathchain/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "pathchain/errors.hpp"

namespace pathchain::io {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string> split(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        fields.emplace_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

bool parse_double(std::string_view s, double& out) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) return false;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path.string() + "' for reading");
    return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open '" + path.string() + "' for writing");
    return out;
}

}  // namespace

std::string format_double(double value) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

Table read_table(std::istream& in, const ReadOptions& options) {
    struct Row {
        std::size_t line;
        std::vector<std::string> fields;
    };
    std::vector<Row> rows;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (trim(line).empty()) continue;
        rows.push_back({number, split(line)});
    }
    if (rows.empty()) throw InputError("csv: no data rows", number);

    const std::size_t width = rows.front().fields.size();
    if (width < 2) throw InputError("csv: need an id column and at least one value column", rows.front().line);

    // A literal "id" first field marks a header even when every other name is numeric.
    bool header = trim(rows.front().fields[0]) == "id";
    for (std::size_t j = 1; j < width && !header; ++j) {
        double v;
        header = !parse_double(rows.front().fields[j], v);
    }
    if (!header && (!options.exclude_columns.empty() || options.label_column))
        throw InputError("csv: column selection by name needs a header row", rows.front().line);

    Table table;
    table.had_header = header;
    std::vector<std::size_t> value_cols;
    std::optional<std::size_t> label_col;
    for (std::size_t j = 1; j < width; ++j) {
        const std::string name = header ? rows.front().fields[j] : "c" + std::to_string(j);
        if (options.label_column && name == *options.label_column) {
            label_col = j;
            continue;
        }
        if (std::find(options.exclude_columns.begin(), options.exclude_columns.end(), name) !=
            options.exclude_columns.end())
            continue;
        value_cols.push_back(j);
        table.columns.push_back(name);
    }
    if (options.label_column && !label_col)
        throw InputError("csv: label column '" + *options.label_column + "' not found", rows.front().line);
    for (const auto& name : options.exclude_columns) {
        if (std::find(rows.front().fields.begin() + 1, rows.front().fields.end(), name) == rows.front().fields.end())
            throw InputError("csv: excluded column '" + name + "' not found", rows.front().line);
    }
    if (value_cols.empty()) throw InputError("csv: no value columns left after selection", rows.front().line);

    const std::size_t first = header ? 1 : 0;
    const auto n = static_cast<Eigen::Index>(rows.size() - first);
    if (n == 0) throw InputError("csv: header but no data rows", rows.front().line);
    table.values.resize(n, static_cast<Eigen::Index>(value_cols.size()));
    if (label_col) table.labels.emplace();
    std::unordered_set<std::string> seen;
    for (std::size_t i = first; i < rows.size(); ++i) {
        const Row& row = rows[i];
        if (row.fields.size() != width) {
            std::ostringstream os;
            os << "csv: expected " << width << " fields, found " << row.fields.size();
            throw InputError(os.str(), row.line);
        }
        const auto r = static_cast<Eigen::Index>(i - first);
        if (!seen.insert(row.fields[0]).second)
            throw InputError("csv: duplicate id '" + row.fields[0] + "'", row.line);
        table.ids.push_back(row.fields[0]);
        for (std::size_t c = 0; c < value_cols.size(); ++c) {
            double v;
            if (!parse_double(row.fields[value_cols[c]], v)) {
                std::ostringstream os;
                os << "csv: field " << value_cols[c] + 1 << " ('" << row.fields[value_cols[c]]
                   << "') is not a number";
                throw InputError(os.str(), row.line);
            }
            table.values(r, static_cast<Eigen::Index>(c)) = v;
        }
        if (label_col) table.labels->push_back(row.fields[*label_col]);
    }
    return table;
}

Table read_table(const std::filesystem::path& path, const ReadOptions& options) {
    auto in = open_in(path);
    return read_table(in, options);
}

Vector column(const Table& table, const std::string& name) {
    const auto it = std::find(table.columns.begin(), table.columns.end(), name);
    if (it == table.columns.end()) throw InputError("csv: no column named '" + name + "'");
    return table.values.col(it - table.columns.begin());
}

PointCloud read_point_cloud(const std::filesystem::path& path, const ReadOptions& options) {
    Table t = read_table(path, options);
    return PointCloud(std::move(t.values), std::move(t.ids), std::move(t.labels));
}

void write_matrix(std::ostream& out, const std::vector<std::string>& ids, const Matrix& m) {
    if (static_cast<Eigen::Index>(ids.size()) != m.rows() || m.rows() != m.cols())
        throw InputError("write_matrix: ids do not match a square matrix");
    out << "id";
    for (const auto& id : ids) out << ',' << id;
    out << '\n';
    for (Eigen::Index a = 0; a < m.rows(); ++a) {
        out << ids[static_cast<std::size_t>(a)];
        for (Eigen::Index b = 0; b < m.cols(); ++b) out << ',' << format_double(m(a, b));
        out << '\n';
    }
}

void write_matrix(const std::filesystem::path& path, const std::vector<std::string>& ids, const Matrix& m) {
    auto out = open_out(path);
    write_matrix(out, ids, m);
}

LabelledMatrix read_matrix(const std::filesystem::path& path) {
    Table t = read_table(path);
    if (!t.had_header) throw InputError("matrix csv '" + path.string() + "': missing id header row", 1);
    if (t.values.rows() != t.values.cols()) {
        std::ostringstream os;
        os << "matrix csv '" << path.string() << "': " << t.values.rows() << " rows but " << t.values.cols()
           << " columns";
        throw InputError(os.str());
    }
    if (t.columns != t.ids) throw InputError("matrix csv '" + path.string() + "': header ids do not match row ids");
    return {std::move(t.ids), std::move(t.values)};
}

void write_vector(const std::filesystem::path& path, const std::vector<std::string>& ids, const Vector& v,
                  const std::string& value_name) {
    if (static_cast<Eigen::Index>(ids.size()) != v.size()) throw InputError("write_vector: id count mismatch");
    auto out = open_out(path);
    out << "id," << value_name << '\n';
    for (Eigen::Index i = 0; i < v.size(); ++i) out << ids[static_cast<std::size_t>(i)] << ',' << format_double(v(i)) << '\n';
}

LabelledVector read_vector(const std::filesystem::path& path) {
    Table t = read_table(path);
    if (t.values.cols() != 1) throw InputError("vector csv '" + path.string() + "': expected exactly 2 columns");
    return {std::move(t.ids), t.values.col(0)};
}

void write_chain(const std::filesystem::path& q_path, const std::filesystem::path& p_path,
                 const std::vector<std::string>& ids, const MarkovChain& chain) {
    write_matrix(q_path, ids, chain.q());
    write_vector(p_path, ids, chain.p(), "p");
}

MarkovChain read_chain(const std::filesystem::path& q_path, const std::filesystem::path& p_path,
                       std::vector<std::string>* ids) {
    LabelledMatrix q = read_matrix(q_path);
    LabelledVector p = read_vector(p_path);
    if (p.values.size() != q.values.rows()) {
        std::ostringstream os;
        os << "chain: q is " << q.values.rows() << "x" << q.values.cols() << " but p has " << p.values.size()
           << " entries";
        throw InputError(os.str());
    }
    if (p.ids != q.ids) throw InputError("chain: ids of q and p differ");
    if (ids) *ids = q.ids;
    return MarkovChain(std::move(q.values), std::move(p.values), true, ChainProvenance::external);
}

void write_target(const std::filesystem::path& path, const std::vector<std::string>& ids,
                  const StationaryTarget& target) {
    write_vector(path, ids, target.p(), "p");
}

StationaryTarget read_target(const std::filesystem::path& path, const std::vector<std::string>* expected_ids) {
    LabelledVector v = read_vector(path);
    if (!expected_ids) return StationaryTarget(std::move(v.values), TargetProvenance::custom);

    if (v.ids.size() != expected_ids->size()) {
        std::ostringstream os;
        os << "target '" << path.string() << "' has " << v.ids.size() << " entries, expected " << expected_ids->size();
        throw InputError(os.str());
    }
    std::unordered_map<std::string, Eigen::Index> where;
    for (std::size_t i = 0; i < v.ids.size(); ++i) where.emplace(v.ids[i], static_cast<Eigen::Index>(i));
    Vector ordered(v.values.size());
    for (std::size_t i = 0; i < expected_ids->size(); ++i) {
        const auto it = where.find((*expected_ids)[i]);
        if (it == where.end()) throw InputError("target '" + path.string() + "': missing id '" + (*expected_ids)[i] + "'");
        ordered(static_cast<Eigen::Index>(i)) = v.values(it->second);
    }
    return StationaryTarget(std::move(ordered), TargetProvenance::custom);
}

void write_embedding(const std::filesystem::path& path, const std::vector<std::string>& ids,
                     const Embedding& embedding) {
    const Matrix& x = embedding.coords;
    if (static_cast<Eigen::Index>(ids.size()) != x.rows()) throw InputError("write_embedding: id count mismatch");
    auto out = open_out(path);
    out << "id";
    for (Eigen::Index j = 0; j < x.cols(); ++j) out << ",D" << j + 1;
    out << '\n';
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        out << ids[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < x.cols(); ++j) out << ',' << format_double(x(i, j));
        out << '\n';
    }
}

void write_ising(std::ostream& out, const IsingSample& sample) {
    const Eigen::Index sites = sample.configurations.cols();
    out << "id,energy,magnetization";
    for (Eigen::Index j = 0; j < sites; ++j) out << ",s" << j;
    out << '\n';
    for (Eigen::Index i = 0; i < sample.configurations.rows(); ++i) {
        out << i << ',' << format_double(sample.energies(i)) << ',' << format_double(sample.magnetizations(i));
        for (Eigen::Index j = 0; j < sites; ++j) out << ',' << static_cast<int>(sample.configurations(i, j));
        out << '\n';
    }
}

void write_ising(const std::filesystem::path& path, const IsingSample& sample) {
    auto out = open_out(path);
    write_ising(out, sample);
}

nlohmann::json to_json(const ChainReport& r) {
    return {
        {"passed", r.passed},
        {"tol", r.tol},
        {"row_sum_deviation", r.row_sum_deviation},
        {"worst_row", r.worst_row},
        {"min_entry", r.min_entry},
        {"min_stationary", r.min_stationary},
        {"stationary_sum_deviation", r.stationary_sum_deviation},
        {"stationarity_residual", r.stationarity_residual},
        {"worst_column", r.worst_column},
        {"detailed_balance_residual", r.detailed_balance_residual},
        {"worst_pair", {r.worst_pair_a, r.worst_pair_b}},
        {"column_sum_deviation", r.column_sum_deviation},
        {"symmetry_residual", r.symmetry_residual},
    };
}

nlohmann::json to_json(const Embedding& e) {
    return {
        {"eigenvalues", std::vector<double>(e.eigenvalues.begin(), e.eigenvalues.end())},
        {"residuals", std::vector<double>(e.residuals.begin(), e.residuals.end())},
        {"symmetry_residual", e.symmetry_residual},
        {"warnings", e.warnings},
    };
}

nlohmann::json to_json(const SolverTelemetry& t) {
    nlohmann::json j = {
        {"solver", t.solver},
        {"iterations", t.iterations},
        {"residual", t.residual},
        {"residual_trace", t.residual_trace},
    };
    if (t.solver == "perron") j["eta"] = t.eta;
    return j;
}

}  // namespace pathchain::io
