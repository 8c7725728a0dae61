#include "scalecalc/serialize.hpp"

#include "scalecalc/errors.hpp"

#include <cstdio>
#include <memory>
#include <ostream>
#include <stdexcept>

namespace scalecalc {

namespace {

using nlohmann::json;

std::string class_label(double exponent) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "mu^%.6g", exponent);
    return buf;
}

json tail_to_json(const std::optional<PowerLawTail>& tail) {
    if (!tail) return nullptr;
    return json{{"coefficient", tail->coefficient}, {"exponent", tail->exponent}};
}

std::optional<PowerLawTail> tail_from_json(const json& j) {
    if (j.is_null()) return std::nullopt;
    PowerLawTail t;
    t.coefficient = j.at("coefficient").get<double>();
    t.exponent = j.at("exponent").get<double>();
    return t;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

json growth_to_json(const GrowthFunction& f) {
    json j;
    switch (f.kind()) {
        case GrowthKind::PowerLaw:
            j["kind"] = "power-law";
            j["coefficient"] = f.coefficient();
            j["exponent"] = f.exponent();
            break;
        case GrowthKind::SpectrumBacked: {
            j["kind"] = "spectrum-backed";
            json entries = json::array();
            for (const auto& e : f.spectrum()->entries())
                entries.push_back(json::array({e.eigenvalue, e.multiplicity}));
            j["entries"] = std::move(entries);
            j["provenance"] = f.spectrum()->provenance();
            j["shift"] = f.shift();
            j["power"] = f.pointwise_power();
            break;
        }
        case GrowthKind::ExplicitPrefix:
            j["kind"] = "explicit-prefix";
            j["prefix"] = f.prefix_values();
            j["tail"] = tail_to_json(f.tail());
            j["certified_unbounded"] = f.certified_unbounded();
            j["power"] = f.pointwise_power();
            break;
    }
    return j;
}

GrowthFunction growth_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "power-law")
        return GrowthFunction::power_law(j.at("coefficient").get<double>(),
                                         j.at("exponent").get<double>());
    if (kind == "spectrum-backed") {
        std::vector<SpectrumEntry> entries;
        for (const auto& pair : j.at("entries"))
            entries.push_back({pair.at(0).get<double>(), pair.at(1).get<std::size_t>()});
        auto spectrum = std::make_shared<Spectrum>(
            std::move(entries), j.value("provenance", std::string{}));
        GrowthFunction f = GrowthFunction::spectrum_backed(std::move(spectrum),
                                                           j.at("shift").get<double>());
        const unsigned p = j.value("power", 1u);
        return p == 1 ? f : power(f, p);
    }
    if (kind == "explicit-prefix") {
        GrowthFunction f = GrowthFunction::explicit_prefix(
            j.at("prefix").get<std::vector<double>>(), tail_from_json(j.at("tail")),
            j.value("certified_unbounded", false));
        const unsigned p = j.value("power", 1u);
        return p == 1 ? f : power(f, p);
    }
    throw std::invalid_argument("unknown growth kind: " + kind);
}

json weyl_fit_to_json(const WeylFit& fit) {
    return json{{"q", fit.exponent},
                {"C", fit.constant},
                {"residual", fit.residual},
                {"tail_fraction", fit.tail_fraction},
                {"count", fit.count}};
}

json invariant_table_to_json(const InvariantTable& table) {
    json entries = json::array();
    for (unsigned i = 0; i < table.j_max(); ++i) {
        for (unsigned jj = i + 1; jj <= table.j_max(); ++jj) {
            const GrowthClass cls = table.at(i, jj);
            entries.push_back(json{{"i", i},
                                   {"j", jj},
                                   {"exponent", cls.class_exponent()},
                                   {"exact", cls.exact()},
                                   {"representative", class_label(cls.class_exponent())}});
        }
    }
    return json{{"j_max", table.j_max()}, {"entries", std::move(entries)}};
}

json sobolev_report_to_json(const SobolevReport& report) {
    json levels = json::array();
    for (const auto& level : report.levels)
        levels.push_back(json{{"k", level.k},
                              {"derivative_route", level.derivative_route},
                              {"weight_route", level.weight_route},
                              {"ratio", level.ratio}});
    return json{{"levels", std::move(levels)}};
}

json model_to_json(const FractalModel& m) {
    return json{{"growth", growth_to_json(m.growth)},
                {"provenance", m.provenance},
                {"base_offset", m.base_offset}};
}

FractalModel model_from_json(const json& j) {
    return FractalModel(growth_from_json(j.at("growth")),
                        j.at("provenance").get<std::string>(),
                        j.at("base_offset").get<unsigned>());
}

void write_spectrum_csv(std::ostream& os, const Spectrum& s) {
    os << "rank,eigenvalue,multiplicity\n";
    std::size_t rank = 1;
    for (const auto& entry : s.entries())
        for (std::size_t i = 0; i < entry.multiplicity; ++i, ++rank)
            os << rank << ',' << format_double(entry.eigenvalue) << ','
               << entry.multiplicity << '\n';
}

void write_merge_csv(std::ostream& os, const MergePrefix& m) {
    os << "index,value,source\n";
    for (std::size_t i = 0; i < m.values.size(); ++i)
        os << (i + 1) << ',' << format_double(m.values[i]) << ','
           << (m.slots[i].source == MergeSlot::Source::Left ? "left" : "right") << '\n';
}

void write_coefficients_csv(std::ostream& os, const FourierCoefficients& c) {
    os << "mode,type,frequency,value\n";
    for (std::size_t mu = 1; mu <= c.size(); ++mu) {
        const char* type = "const";
        if (mu > 1) type = (mu % 2 == 0) ? "cos" : "sin";
        os << mu << ',' << type << ',' << (mu / 2) << ','
           << format_double(c.coefficient(mu)) << '\n';
    }
}

}  // namespace scalecalc
