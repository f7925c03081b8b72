#include "cutofflab/csvio.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

namespace cutofflab {

namespace {

using ordered_json = nlohmann::ordered_json;

struct SpectrumRow {
    double eigenvalue;
    double weight;
};

std::vector<SpectrumRow> spectrum_rows(const SpectralDecomposition& dec, std::size_t x) {
    auto clusters = cluster_eigenvalues(dec.eigenvalues);
    auto weights = start_weights_by_cluster(dec, x);
    std::vector<SpectrumRow> rows;
    rows.reserve(dec.size);
    for (std::size_t c = 0; c < clusters.size(); ++c) {
        double per_member = weights[c] / static_cast<double>(clusters[c].count);
        for (std::size_t i = 0; i < clusters[c].count; ++i)
            rows.push_back({dec.eigenvalues[clusters[c].first + i], per_member});
    }
    return rows;
}

ordered_json curve_meta_json(const ProfileMeta& meta) {
    ordered_json m;
    m["family"] = meta.family;
    m["n"] = meta.n_label;
    m["start"] = meta.start;
    m["convention"] = meta.convention;
    m["dropped_c"] = meta.dropped_c;
    return m;
}

void append_meta_comments(std::ostringstream& out, const ProfileMeta& meta) {
    out << "# family: " << meta.family << "\n";
    out << "# n: " << meta.n_label << "\n";
    out << "# start: " << meta.start << "\n";
    out << "# convention: " << meta.convention << "\n";
    if (!meta.dropped_c.empty()) {
        out << "# dropped_c:";
        for (double c : meta.dropped_c) out << ' ' << format_double(c);
        out << "\n";
    }
}

// nan-aware lookup of a curve value at grid point c
std::string curve_cell(const ProfileCurve& curve, double c) {
    for (std::size_t i = 0; i < curve.c_grid.size(); ++i)
        if (curve.c_grid[i] == c) return format_double(curve.values[i]);
    return "nan";
}

}  // namespace

std::string spectrum_csv(const SpectralDecomposition& dec, std::size_t x) {
    std::ostringstream out;
    out << "index,eigenvalue,weight_at_start\n";
    auto rows = spectrum_rows(dec, x);
    for (std::size_t i = 0; i < rows.size(); ++i)
        out << (i + 1) << ',' << format_double(rows[i].eigenvalue) << ','
            << format_double(rows[i].weight) << "\n";
    return out.str();
}

std::string spectrum_csv(const AnalyticSpectrum& spec) {
    std::ostringstream out;
    out << "index,eigenvalue,weight_at_start\n";
    for (std::size_t i = 0; i < spec.clusters(); ++i)
        out << (i + 1) << ',' << format_double(spec.betas[i]) << ','
            << format_double(spec.weight(i)) << "\n";
    return out.str();
}

std::string spectrum_json(const SpectralDecomposition& dec, std::size_t x) {
    ordered_json j;
    j["chain"] = dec.label;
    j["start"] = x;
    auto rows = spectrum_rows(dec, x);
    ordered_json list = ordered_json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        ordered_json row;
        row["index"] = i + 1;
        row["eigenvalue"] = rows[i].eigenvalue;
        row["weight_at_start"] = rows[i].weight;
        list.push_back(std::move(row));
    }
    j["spectrum"] = std::move(list);
    return j.dump(2) + "\n";
}

std::string spectrum_json(const AnalyticSpectrum& spec) {
    ordered_json j;
    j["chain"] = spec.label;
    j["start"] = "designated corner state";
    ordered_json list = ordered_json::array();
    for (std::size_t i = 0; i < spec.clusters(); ++i) {
        ordered_json row;
        row["index"] = i + 1;
        row["eigenvalue"] = spec.betas[i];
        row["weight_at_start"] = spec.weight(i);
        list.push_back(std::move(row));
    }
    j["spectrum"] = std::move(list);
    return j.dump(2) + "\n";
}

std::string curve_csv(const ProfileCurve& curve) {
    std::ostringstream out;
    append_meta_comments(out, curve.meta);
    out << "c,value\n";
    for (std::size_t i = 0; i < curve.c_grid.size(); ++i)
        out << format_double(curve.c_grid[i]) << ',' << format_double(curve.values[i]) << "\n";
    return out.str();
}

std::string curve_json(const ProfileCurve& curve) {
    ordered_json j;
    j["meta"] = curve_meta_json(curve.meta);
    j["c"] = curve.c_grid;
    j["value"] = curve.values;
    return j.dump(2) + "\n";
}

std::string multi_curve_csv(const std::vector<double>& c_grid,
                            const std::vector<ProfileCurve>& curves,
                            const std::vector<std::string>& labels) {
    if (curves.size() != labels.size())
        throw ParameterError("multi_curve_csv: label/curve count mismatch");
    std::ostringstream out;
    if (!curves.empty()) append_meta_comments(out, curves.front().meta);
    out << "c";
    for (const auto& label : labels) out << ',' << label;
    out << "\n";
    for (double c : c_grid) {
        out << format_double(c);
        for (const auto& curve : curves) out << ',' << curve_cell(curve, c);
        out << "\n";
    }
    return out.str();
}

std::string multi_curve_json(const std::vector<double>& c_grid,
                             const std::vector<ProfileCurve>& curves,
                             const std::vector<std::string>& labels) {
    if (curves.size() != labels.size())
        throw ParameterError("multi_curve_json: label/curve count mismatch");
    ordered_json j;
    if (!curves.empty()) j["meta"] = curve_meta_json(curves.front().meta);
    j["c"] = c_grid;
    for (std::size_t k = 0; k < curves.size(); ++k) {
        std::vector<double> column;
        column.reserve(c_grid.size());
        for (double c : c_grid) {
            std::string cell = curve_cell(curves[k], c);
            column.push_back(cell == "nan" ? std::nan("") : std::stod(cell));
        }
        j[labels[k]] = column;
    }
    return j.dump(2) + "\n";
}

std::string report_csv(const ConditionReport& report) {
    std::ostringstream out;
    out << "# family: " << report.family << "\n";
    out << "# condition: " << to_string(report.condition) << "\n";
    out << "# top_k: " << report.top_k << "\n";
    out << "n";
    for (double c : report.c_grid) out << ',' << format_double(c);
    out << "\n";
    for (std::size_t i = 0; i < report.n_list.size(); ++i) {
        out << report.n_list[i];
        for (std::size_t j = 0; j < report.c_grid.size(); ++j)
            out << ',' << format_double(report.values(i, j));
        out << "\n";
    }
    out << "limsup";
    for (double v : report.limsup_estimate) out << ',' << format_double(v);
    out << "\n";
    if (report.reference_bound) {
        out << "reference";
        for (double v : *report.reference_bound) out << ',' << format_double(v);
        out << "\n";
    }
    return out.str();
}

std::string report_json(const ConditionReport& report) {
    ordered_json j;
    j["family"] = report.family;
    j["condition"] = to_string(report.condition);
    j["top_k"] = report.top_k;
    j["n"] = report.n_list;
    j["c"] = report.c_grid;
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < report.n_list.size(); ++i) {
        std::vector<double> row(report.c_grid.size());
        for (std::size_t jx = 0; jx < report.c_grid.size(); ++jx) row[jx] = report.values(i, jx);
        rows.push_back(row);
    }
    j["values"] = std::move(rows);
    j["limsup"] = report.limsup_estimate;
    if (report.reference_bound) j["reference"] = *report.reference_bound;
    return j.dump(2) + "\n";
}

}  // namespace cutofflab
