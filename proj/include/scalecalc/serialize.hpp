#pragma once

#include "scalecalc/fourier.hpp"
#include "scalecalc/scale_space.hpp"
#include "scalecalc/spectrum.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace scalecalc {

// Stable text form for floats in machine output: 12 significant digits.
std::string format_double(double v);

nlohmann::json growth_to_json(const GrowthFunction& f);
GrowthFunction growth_from_json(const nlohmann::json& j);

nlohmann::json weyl_fit_to_json(const WeylFit& fit);
nlohmann::json invariant_table_to_json(const InvariantTable& table);
nlohmann::json sobolev_report_to_json(const SobolevReport& report);

nlohmann::json model_to_json(const FractalModel& m);
FractalModel model_from_json(const nlohmann::json& j);

// rank,eigenvalue,multiplicity  (expanded rows; multiplicity of the row's level)
void write_spectrum_csv(std::ostream& os, const Spectrum& s);

// index,value,source  with source in {left,right}
void write_merge_csv(std::ostream& os, const MergePrefix& m);

// mode,type,frequency,value  with type in {const,cos,sin}
void write_coefficients_csv(std::ostream& os, const FourierCoefficients& c);

}  // namespace scalecalc
