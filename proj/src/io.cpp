#include "disckit/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace disckit {

namespace {

struct ParsedRows {
    std::vector<std::vector<double>> rows;
};

ParsedRows parse_instance_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path, 0);
    ParsedRows out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> row;
        std::size_t at = 0;
        while (at <= line.size()) {
            std::size_t comma = line.find(',', at);
            std::string field = line.substr(
                at, comma == std::string::npos ? std::string::npos : comma - at);
            try {
                std::size_t used = 0;
                double v = std::stod(field, &used);
                if (used != field.size())
                    throw std::invalid_argument("trailing junk");
                row.push_back(v);
            } catch (const std::exception&) {
                throw ParseError(path + ":" + std::to_string(lineno) +
                                     ": bad numeric field '" + field + "'",
                                 lineno);
            }
            if (comma == std::string::npos) break;
            at = comma + 1;
        }
        if (!out.rows.empty() && row.size() != out.rows.front().size())
            throw ParseError(path + ":" + std::to_string(lineno) +
                                 ": inconsistent column count",
                             lineno);
        out.rows.push_back(std::move(row));
    }
    if (out.rows.empty()) throw ParseError(path + ": no examples", 0);
    return out;
}

Matrix rows_to_matrix(const std::vector<std::vector<double>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    return m;
}

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

UnlabeledDataset load_unlabeled_instance(const std::string& path) {
    ParsedRows p = parse_instance_lines(path);
    return make_unlabeled(rows_to_matrix(p.rows, p.rows.front().size()));
}

LabeledDataset load_labeled_instance(const std::string& path) {
    ParsedRows p = parse_instance_lines(path);
    std::size_t cols = p.rows.front().size();
    if (cols < 2)
        throw ParseError(path + ": labeled instances need >= 1 feature + label", 0);
    std::vector<double> labels;
    labels.reserve(p.rows.size());
    for (const auto& row : p.rows) labels.push_back(row.back());
    return make_labeled(rows_to_matrix(p.rows, cols - 1), std::move(labels));
}

void save_unlabeled_instance(const UnlabeledDataset& d, const std::string& path) {
    std::ostringstream out;
    for (std::size_t i = 0; i < d.size(); ++i) {
        auto row = d.features.row(i);
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out << ',';
            out << format_value(row[j]);
        }
        out << '\n';
    }
    write_text_file(path, out.str());
}

void save_labeled_instance(const LabeledDataset& d, const std::string& path) {
    std::ostringstream out;
    for (std::size_t i = 0; i < d.size(); ++i) {
        auto row = d.features.row(i);
        for (double v : row) out << format_value(v) << ',';
        out << (d.labels[i] > 0 ? "+1" : "-1") << '\n';
    }
    write_text_file(path, out.str());
}

namespace {

nlohmann::json hypothesis_json(const Hypothesis& h) {
    return nlohmann::json{{"weights", h.weights},
                          {"basis", h.basis.kind == BasisKind::affine ? "affine"
                                    : h.basis.kind == BasisKind::identity
                                        ? "identity"
                                        : "precomputed"}};
}

}  // namespace

std::string report_to_json(const DiscrepancyReport& rep) {
    nlohmann::json j;
    j["measure"] = measure_name(rep.measure);
    j["value"] = rep.value;
    j["witness_params"] = nlohmann::json::array();
    for (const auto& w : rep.witness) j["witness_params"].push_back(hypothesis_json(w));
    if (rep.reference) j["reference_hypothesis"] = hypothesis_json(*rep.reference);
    j["diagnostics"] = {{"J_value", rep.diagnostics.j_value},
                        {"J_raw", rep.diagnostics.j_raw},
                        {"term_T", rep.diagnostics.term_T},
                        {"term_S", rep.diagnostics.term_S},
                        {"clamped", rep.diagnostics.clamped},
                        {"method", rep.diagnostics.method}};
    return j.dump(2);
}

std::string bound_to_json(const BoundReport& rep) {
    nlohmann::json terms = nlohmann::json::object();
    for (const auto& [name, v] : rep.terms) terms[name] = v;
    nlohmann::json j{{"bound_name", rep.bound_name},
                     {"value", rep.value},
                     {"terms", terms}};
    if (!rep.notes.empty()) j["notes"] = rep.notes;
    return j.dump(2);
}

std::string ranking_to_json(const SourceRanking& ranking) {
    nlohmann::json j;
    j["scores"] = nlohmann::json::array();
    for (const auto& s : ranking.scores) {
        nlohmann::json e{{"input_index", s.input_index}, {"ok", s.ok}};
        if (s.ok)
            e["value"] = s.value;
        else
            e["error"] = s.error;
        j["scores"].push_back(std::move(e));
    }
    j["order"] = ranking.order;
    j["tie_groups"] = ranking.tie_groups;
    if (ranking.clean_in_top_k) j["clean_in_top_k"] = *ranking.clean_in_top_k;
    return j.dump(2);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path, 0);
    out << content;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read " + path, 0);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace disckit
