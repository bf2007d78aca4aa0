#pragma once

// Deterministic file output: 17-significant-digit CSV, atomic writes, and
// stable configuration hashes.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "hq/entanglement.hpp"
#include "hq/phase_space.hpp"
#include "hq/scenario.hpp"
#include "hq/superposition.hpp"

namespace hq {

inline constexpr const char* kConventionNote =
    "x = (a + a^dag)/sqrt(2), p = (a - a^dag)/(i sqrt(2)); vacuum variance 1/2; "
    "W(x, p) is a density in dx dp; entropy in bits";

/// 17 significant digits, general notation.
std::string format_double(double v);

/// Rows of numbers joined with ',' and terminated with '\n'.
class CsvBuilder {
public:
    explicit CsvBuilder(const std::vector<std::string>& header);
    CsvBuilder& row(const std::vector<double>& values);
    const std::string& str() const { return text_; }

private:
    std::string text_;
    std::size_t columns_;
};

/// Writes to a temporary sibling and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);
void write_json_atomic(const std::filesystem::path& path, const nlohmann::json& doc);

std::uint64_t fnv1a64(const std::string& bytes);
/// Hex FNV-1a of the canonical configuration serialisation.
std::string config_hash(const ScenarioConfig& config);

nlohmann::json grid_json(const Grid1D& g);

/// (k, t, re_weight, im_weight, re/im alpha per mode)
std::string branches_csv(const MultimodeSuperposition& state);
/// (x, p, W)
std::string wigner_csv(const WignerGrid& w);
/// (X_a, X_b, re_psi, im_psi, abs2)
std::string quadrature_csv(const QuadratureField& field);
/// (i, lambda_i)
std::string spectrum_csv(const SchmidtSpectrum& s);

}  // namespace hq
