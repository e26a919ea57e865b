// model_io.cpp -- JSON model file parsing and serialization.

#include "model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qcr {

using ordered_json = nlohmann::ordered_json;

static std::pair<int, int> line_column(const std::string& text, size_t byte) {
    int line = 1, col = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

static Mat parse_block(const ordered_json& j, int m, const std::string& where) {
    if (!j.is_array() || static_cast<int>(j.size()) != m)
        fail(Errc::validation_error,
             where + ": expected " + std::to_string(m) + " rows, got " +
                 (j.is_array() ? std::to_string(j.size()) : std::string("non-array")));
    Mat blk(m, m);
    for (int r = 0; r < m; ++r) {
        const ordered_json& row = j[r];
        if (!row.is_array() || static_cast<int>(row.size()) != m)
            fail(Errc::validation_error, where + " row " + std::to_string(r) + ": expected " +
                                             std::to_string(m) + " entries");
        for (int c = 0; c < m; ++c) {
            if (!row[c].is_number())
                fail(Errc::validation_error, where + " entry (" + std::to_string(r) + "," +
                                                 std::to_string(c) + ") is not a number");
            blk(r, c) = row[c].get<double>();
        }
    }
    return blk;
}

static std::vector<Mat> parse_block_list(const ordered_json& j, int m, const std::string& name) {
    if (!j.is_array() || j.empty())
        fail(Errc::validation_error, name + " must be a non-empty array of blocks");
    std::vector<Mat> out;
    out.reserve(j.size());
    for (size_t i = 0; i < j.size(); ++i)
        out.push_back(parse_block(j[i], m, name + "[" + std::to_string(i) + "]"));
    return out;
}

MG1Model parse_model(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        fail(Errc::parse_error,
             "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
    }
    if (!j.is_object()) fail(Errc::validation_error, "model file must be a JSON object");

    const int schema = j.value("schema", 1);
    if (schema != 1)
        fail(Errc::validation_error, "unsupported schema version " + std::to_string(schema));
    if (!j.contains("type") || !j["type"].is_string())
        fail(Errc::validation_error, "missing or non-string \"type\"");
    const std::string type = j["type"].get<std::string>();
    if (type != "mg1" && type != "qbd")
        fail(Errc::validation_error, "\"type\" must be \"mg1\" or \"qbd\", got \"" + type + "\"");
    if (!j.contains("m") || !j["m"].is_number_integer())
        fail(Errc::validation_error, "missing or non-integer \"m\"");
    const int m = j["m"].get<int>();
    if (m < 1) fail(Errc::validation_error, "\"m\" must be >= 1");
    if (!j.contains("a_start") || !j["a_start"].is_number_integer() ||
        j["a_start"].get<int>() != -1)
        fail(Errc::validation_error, "\"a_start\" must be present and equal to -1");
    if (!j.contains("A")) fail(Errc::validation_error, "missing \"A\"");
    std::vector<Mat> a = parse_block_list(j["A"], m, "A");
    if (!j.contains("B")) fail(Errc::validation_error, "missing \"B\"");
    std::vector<Mat> b = parse_block_list(j["B"], m, "B");

    std::optional<double> nu;
    if (j.contains("nu")) {
        if (!j["nu"].is_number()) fail(Errc::validation_error, "\"nu\" must be a number");
        nu = j["nu"].get<double>();
    }

    if (type == "qbd") {
        if (a.size() != 3)
            fail(Errc::validation_error,
                 "qbd requires exactly 3 A blocks, got " + std::to_string(a.size()));
        if (b.size() != 1)
            fail(Errc::validation_error,
                 "qbd requires exactly 1 B block (B_0), got " + std::to_string(b.size()));
        return make_qbd(a[0], a[1], a[2], b[0], nu);
    }
    return make_mg1(std::move(a), std::move(b), nu);
}

static ordered_json block_to_json(const Mat& blk) {
    ordered_json rows = ordered_json::array();
    for (int r = 0; r < blk.rows(); ++r) {
        ordered_json row = ordered_json::array();
        for (int c = 0; c < blk.cols(); ++c) row.push_back(blk(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string serialize_model(const MG1Model& model) {
    ordered_json j;
    j["schema"] = 1;
    j["type"] = model.is_qbd ? "qbd" : "mg1";
    j["m"] = model.m;
    j["a_start"] = -1;
    ordered_json a = ordered_json::array();
    for (const Mat& blk : model.a.coeffs) a.push_back(block_to_json(blk));
    j["A"] = std::move(a);
    ordered_json b = ordered_json::array();
    const int b_count = model.is_qbd ? 1 : model.b.size();  // qbd: B_1 is implied
    for (int i = 0; i < b_count; ++i) b.push_back(block_to_json(model.b.coeffs[i]));
    j["B"] = std::move(b);
    if (model.nu) j["nu"] = *model.nu;
    return j.dump(2) + "\n";
}

MG1Model load_model_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::io_error, "cannot open model file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) fail(Errc::io_error, "cannot read model file: " + path);
    return parse_model(buf.str());
}

}  // namespace qcr
