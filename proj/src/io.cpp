#include "hq/io.hpp"

#include <charconv>
#include <fstream>
#include <system_error>
#include <unistd.h>

#include "hq/errors.hpp"

namespace hq {

std::string format_double(double v) {
    if (v == 0.0) v = 0.0;  // fold -0
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

CsvBuilder::CsvBuilder(const std::vector<std::string>& header) : columns_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) text_ += ',';
        text_ += header[i];
    }
    text_ += '\n';
}

CsvBuilder& CsvBuilder::row(const std::vector<double>& values) {
    if (values.size() != columns_) throw Error("CSV row width does not match the header");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) text_ += ',';
        text_ += format_double(values[i]);
    }
    text_ += '\n';
    return *this;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw Error("write to " + tmp.string() + " failed");
    }
    std::filesystem::rename(tmp, path);
}

void write_json_atomic(const std::filesystem::path& path, const nlohmann::json& doc) {
    write_atomic(path, doc.dump(2) + "\n");
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string config_hash(const ScenarioConfig& config) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(to_json(config).dump())));
    return buf;
}

nlohmann::json grid_json(const Grid1D& g) { return {{"min", g.min}, {"max", g.max}, {"count", g.count}}; }

std::string branches_csv(const MultimodeSuperposition& state) {
    std::vector<std::string> header{"k", "t", "re_weight", "im_weight"};
    for (int m : state.modes) {
        header.push_back("re_alpha_" + std::to_string(m));
        header.push_back("im_alpha_" + std::to_string(m));
    }
    CsvBuilder csv(header);
    for (std::size_t k = 0; k < state.size(); ++k) {
        const auto& b = state.branches[k];
        std::vector<double> row{static_cast<double>(k), b.excitation_time, b.weight.real(), b.weight.imag()};
        for (const cplx& a : b.alphas) {
            row.push_back(a.real());
            row.push_back(a.imag());
        }
        csv.row(row);
    }
    return csv.str();
}

std::string wigner_csv(const WignerGrid& w) {
    CsvBuilder csv({"x", "p", "W"});
    for (int i = 0; i < w.x.count; ++i)
        for (int j = 0; j < w.p.count; ++j) csv.row({w.x.at(i), w.p.at(j), w.at(i, j)});
    return csv.str();
}

std::string quadrature_csv(const QuadratureField& field) {
    if (field.grids.size() != 2) throw Error("quadrature CSV needs a two-axis field");
    const std::string a = std::to_string(field.axes[0]), b = std::to_string(field.axes[1]);
    CsvBuilder csv({"X_" + a, "X_" + b, "re_psi", "im_psi", "abs2"});
    for (int i = 0; i < field.grids[0].count; ++i)
        for (int j = 0; j < field.grids[1].count; ++j) {
            const cplx v = field.at(i, j);
            csv.row({field.grids[0].at(i), field.grids[1].at(j), v.real(), v.imag(), std::norm(v)});
        }
    return csv.str();
}

std::string spectrum_csv(const SchmidtSpectrum& s) {
    CsvBuilder csv({"i", "lambda"});
    for (std::size_t i = 0; i < s.lambdas.size(); ++i) csv.row({static_cast<double>(i), s.lambdas[i]});
    return csv.str();
}

}  // namespace hq
