#include "leuk/data/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "leuk/core/error.hpp"

namespace leuk::data {
namespace {

void append_double(std::string& out, double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, res.ptr);
}

double parse_double(std::string_view field, std::size_t line) {
    double v = 0.0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
        throw DataError("csv line " + std::to_string(line) + ": bad number '" + std::string(field) + "'");
    }
    return v;
}

}  // namespace

std::string feature_csv(const LabeledDataset& ds) {
    if (ds.kind != DatasetKind::feature_vectors) throw PreconditionError("feature_csv: dataset holds images");
    const std::size_t d = ds.vectors.empty() ? 0 : ds.vectors.front().size();
    std::string out = "label";
    for (std::size_t i = 0; i < d; ++i) out += ",f" + std::to_string(i);
    out += '\n';
    for (std::size_t r = 0; r < ds.size(); ++r) {
        if (ds.vectors[r].size() != d) throw ShapeError("feature_csv: ragged feature vectors");
        out += std::to_string(ds.labels[r]);
        for (double v : ds.vectors[r]) {
            out += ',';
            append_double(out, v);
        }
        out += '\n';
    }
    return out;
}

void write_feature_csv(const LabeledDataset& ds, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open " + path.string() + " for writing");
    out << feature_csv(ds);
    if (!out) throw DataError("failed writing " + path.string());
}

LabeledDataset parse_feature_csv(const std::string& text) {
    LabeledDataset ds;
    ds.kind = DatasetKind::feature_vectors;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("label", 0) != 0) throw DataError("csv: missing 'label,...' header");
    const std::size_t columns = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> values;
        std::string_view rest(line);
        int label = -1;
        for (std::size_t col = 0;; ++col) {
            const auto comma = rest.find(',');
            const auto field = rest.substr(0, comma);
            if (col == 0) {
                const double l = parse_double(field, line_no);
                if (l != 0.0 && l != 1.0) throw DataError("csv line " + std::to_string(line_no) + ": label must be 0 or 1");
                label = static_cast<int>(l);
            } else {
                values.push_back(parse_double(field, line_no));
            }
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        if (values.size() + 1 != columns) {
            throw DataError("csv line " + std::to_string(line_no) + ": expected " + std::to_string(columns) + " fields");
        }
        ds.vectors.push_back(std::move(values));
        ds.labels.push_back(label);
        ds.sources.push_back("row " + std::to_string(line_no));
    }
    if (ds.size() == 0) throw DataError("csv: no data rows");
    return ds;
}

LabeledDataset read_feature_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_feature_csv(buf.str());
}

}  // namespace leuk::data
