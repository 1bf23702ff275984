#pragma once

#include "luce/axioms.hpp"
#include "luce/decompose.hpp"
#include "luce/estimate.hpp"
#include "luce/synthesize.hpp"

#include <json.hpp>

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace luce::io {

using json = nlohmann::json;

/// Malformed, truncated, or unsupported document.
class FormatError : public Error {
public:
    using Error::Error;
};

inline constexpr int kFormatVersion = 1;

enum class DocumentKind { rule, correspondence, weights, utility, dataset, report, decomposition };

const char* to_string(DocumentKind kind);

/// A parsed top-level object with validated "kind" and "version" fields.
struct Document {
    DocumentKind kind;
    int version;
    json body;
};

Document parse_document(std::string_view text);
/// Throws FormatError unless the document has the expected kind.
Document parse_document(std::string_view text, DocumentKind expected);
/// Pretty-printed JSON with a trailing newline; keys are sorted.
std::string serialize(const json& document);

json to_json(const RandomChoiceRule& rule);
RandomChoiceRule rule_from_json(const json& document);

json to_json(const ChoiceCorrespondence& corr);
ChoiceCorrespondence correspondence_from_json(const json& document);

json weights_to_json(const Universe& universe, const LuceWeights& weights);
std::pair<Universe, LuceWeights> weights_from_json(const json& document);

json utility_to_json(const Universe& universe, const std::vector<double>& u);
std::pair<Universe, std::vector<double>> utility_from_json(const json& document);

json to_json(const ChoiceDataset& data);
ChoiceDataset dataset_from_json(const json& document);

json to_json(const LuceDecomposition& decomposition, bool reconstruction_verified = true);
LuceDecomposition decomposition_from_json(const json& document);

/// Body fragment for one axiom report (not a document by itself).
json report_entry(const Universe& universe, Arithmetic mode, const AxiomReport& report);
AxiomReport report_entry_from_json(const Universe& universe, Arithmetic mode, const json& entry);

/// Report documents; "subject" tells check, fit, limit, and error apart.
json check_report(const Universe& universe, Arithmetic mode, const std::vector<AxiomReport>& reports);
json fit_report(const Universe& universe, const FitResult& result);
json limit_report(const LimitReport& report);
json error_report(std::string_view code, std::string_view message, const Universe* universe = nullptr,
                  const AxiomReport* report = nullptr, Arithmetic mode = Arithmetic::exact);

/// A JSON array of label arrays.
ChoiceFamily family_from_json(const Universe& universe, const json& sets);
json family_to_json(const Universe& universe, const ChoiceFamily& family);

} // namespace luce::io
