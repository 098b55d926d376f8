#include "sfclust/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace sfclust {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::optional<double> parse_number(const std::string& s) {
    if (s.empty()) return std::nullopt;
    const char* first = s.data();
    if (*first == '+') ++first;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

double cell_value(const std::filesystem::path& path, const std::string& s, std::size_t row,
                  std::size_t col) {
    const auto v = parse_number(s);
    if (!v) {
        throw Error(ErrorCode::Parse, path.string() + ": non-numeric value '" + s + "' at row " +
                                          std::to_string(row + 1) + ", column " +
                                          std::to_string(col + 1));
    }
    return *v;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    return out;
}

}  // namespace

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    CsvTable table;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        auto cells = split(line);
        if (first) {
            first = false;
            if (!parse_number(cells.front())) {
                table.header = std::move(cells);
                continue;
            }
        }
        table.rows.push_back(std::move(cells));
    }
    if (table.rows.empty()) throw Error(ErrorCode::EmptyData, path.string() + ": no data rows");
    const std::size_t width = table.rows.front().size();
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        if (table.rows[r].size() != width) {
            throw Error(ErrorCode::Parse, path.string() + ": row " + std::to_string(r + 1) + " has " +
                                              std::to_string(table.rows[r].size()) +
                                              " fields, expected " + std::to_string(width));
        }
    }
    if (!table.header.empty() && table.header.size() != width) {
        throw Error(ErrorCode::Parse, path.string() + ": header width differs from data width");
    }
    return table;
}

namespace {

Partition code_labels(const std::vector<std::string>& raw) {
    std::map<std::string, int> codes;
    std::vector<int> labels;
    labels.reserve(raw.size());
    for (const auto& cell : raw) {
        const auto [it, fresh] = codes.try_emplace(cell, static_cast<int>(codes.size()));
        labels.push_back(it->second);
    }
    return Partition::from_labels(std::move(labels));
}

}  // namespace

Partition read_labels(const std::filesystem::path& path) {
    const CsvTable table = read_csv(path);
    if (table.rows.front().size() != 1) {
        throw Error(ErrorCode::Parse, path.string() + ": expected one label per line");
    }
    std::vector<std::string> raw;
    for (const auto& row : table.rows) raw.push_back(row.front());
    return code_labels(raw);
}

MvInput read_mv_csv(const std::filesystem::path& path, const std::string& truth_col) {
    const CsvTable table = read_csv(path);
    const std::size_t width = table.rows.front().size();

    std::optional<std::size_t> truth_idx;
    if (!truth_col.empty()) {
        for (std::size_t c = 0; c < table.header.size(); ++c) {
            if (table.header[c] == truth_col) truth_idx = c;
        }
        if (!truth_idx) {
            const auto v = parse_number(truth_col);
            if (!v || *v < 1 || *v > static_cast<double>(width) || *v != std::floor(*v)) {
                throw Error(ErrorCode::InvalidArgument, "truth column '" + truth_col + "' not found");
            }
            truth_idx = static_cast<std::size_t>(*v) - 1;
        }
    }

    const std::size_t p = width - (truth_idx ? 1 : 0);
    if (p == 0) throw Error(ErrorCode::EmptyData, path.string() + ": no feature columns");
    Eigen::MatrixXd x(static_cast<Eigen::Index>(table.rows.size()), static_cast<Eigen::Index>(p));
    std::vector<std::string> raw;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        Eigen::Index j = 0;
        for (std::size_t c = 0; c < width; ++c) {
            const std::string& cell = table.rows[r][c];
            if (truth_idx && c == *truth_idx) {
                raw.push_back(cell);
                continue;
            }
            x(static_cast<Eigen::Index>(r), j++) = cell_value(path, cell, r, c);
        }
    }

    std::vector<std::string> names;
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        if (!truth_idx || c != *truth_idx) names.push_back(table.header[c]);
    }
    MvInput out{Dataset(std::move(x), std::move(names)), std::nullopt};
    if (truth_idx) out.truth = code_labels(raw);
    return out;
}

FunctionalDataset read_fd_csv(const std::filesystem::path& path) {
    const CsvTable table = read_csv(path);
    if (!table.header.empty()) {
        throw Error(ErrorCode::Parse, path.string() + ": first row must hold the grid abscissae");
    }
    if (table.rows.size() < 2) throw Error(ErrorCode::EmptyData, path.string() + ": no curves");
    const auto g = static_cast<Eigen::Index>(table.rows.front().size());
    Eigen::VectorXd grid(g);
    for (Eigen::Index c = 0; c < g; ++c) {
        grid(c) = cell_value(path, table.rows[0][static_cast<std::size_t>(c)], 0, static_cast<std::size_t>(c));
    }
    Eigen::MatrixXd values(static_cast<Eigen::Index>(table.rows.size() - 1), g);
    for (std::size_t r = 1; r < table.rows.size(); ++r) {
        for (Eigen::Index c = 0; c < g; ++c) {
            values(static_cast<Eigen::Index>(r - 1), c) =
                cell_value(path, table.rows[r][static_cast<std::size_t>(c)], r, static_cast<std::size_t>(c));
        }
    }
    return FunctionalDataset(std::move(grid), std::move(values));
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_mv_csv(const std::filesystem::path& path, const Dataset& data, const Partition* truth) {
    auto out = open_out(path);
    const Eigen::MatrixXd& x = data.values();
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        const auto& names = data.feature_names();
        out << (j ? "," : "")
            << (names.empty() ? "x" + std::to_string(j + 1) : names[static_cast<std::size_t>(j)]);
    }
    if (truth) out << ",truth";
    out << '\n';
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index j = 0; j < x.cols(); ++j) out << (j ? "," : "") << format_double(x(i, j));
        if (truth) out << ',' << (*truth)[static_cast<std::size_t>(i)] + 1;
        out << '\n';
    }
}

void write_fd_csv(const std::filesystem::path& path, const FunctionalDataset& data) {
    auto out = open_out(path);
    const auto& grid = data.grid();
    for (Eigen::Index g = 0; g < grid.size(); ++g) out << (g ? "," : "") << format_double(grid(g));
    out << '\n';
    const Eigen::MatrixXd& v = data.values();
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
        for (Eigen::Index g = 0; g < v.cols(); ++g) out << (g ? "," : "") << format_double(v(i, g));
        out << '\n';
    }
}

void write_labels(const std::filesystem::path& path, const Partition& part) {
    auto out = open_out(path);
    for (int l : part.labels()) out << l + 1 << '\n';
}

void write_weights(const std::filesystem::path& path, const Eigen::VectorXd& w) {
    auto out = open_out(path);
    for (Eigen::Index j = 0; j < w.size(); ++j) out << format_double(w(j)) << '\n';
}

void write_weight_function(const std::filesystem::path& path, const Eigen::VectorXd& grid,
                           const Eigen::VectorXd& w) {
    if (grid.size() != w.size()) throw Error(ErrorCode::GridMismatch, "weight function length");
    auto out = open_out(path);
    out << "x,w\n";
    for (Eigen::Index g = 0; g < grid.size(); ++g) {
        out << format_double(grid(g)) << ',' << format_double(w(g)) << '\n';
    }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    auto out = open_out(path);
    out << text;
}

}  // namespace sfclust
