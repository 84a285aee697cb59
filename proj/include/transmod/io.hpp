#pragma once

#include <transmod/modsolve.hpp>

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace transmod {

using Json = nlohmann::json;

Json to_json(const PlanarSet& s);
Json to_json(const DomainSpec& spec);
Json to_json(const CurveFamilySpec& fam);
Json to_json(const SolverConfig& cfg);

// Parsers throw ParseError naming the offending field.
PlanarSet planar_set_from_json(const Json& j, const std::string& where = "set");
DomainSpec domain_from_json(const Json& j);
CurveFamilySpec family_from_json(const Json& j);
/// Missing keys keep the values already in `base`.
SolverConfig solver_config_from_json(const Json& j, SolverConfig base = {});

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

DomainSpec read_domain(const std::string& path);
void write_domain(const std::string& path, const DomainSpec& spec);
CurveFamilySpec read_family(const std::string& path);
void write_family(const std::string& path, const CurveFamilySpec& fam);

/// %.17g with a dot decimal separator.
std::string fmt_double(double x);

/// CSV field quoting for text cells.
std::string csv_field(const std::string& s);

std::string result_csv_header();
std::string result_csv_row(const std::string& label, double h, const ModulusResult& r);

/// Grid dump: a header, then one row of cell values per grid row (nan off the
/// free cells), then one line per contracted weight.
std::string density_dump(const QuotientGrid& grid, const MassDistribution& rho);

/// Domain outline with the density as a heat map (decoration only).
std::string density_svg(const QuotientGrid& grid, const MassDistribution* rho, const CurveFamilySpec* fam);

}  // namespace transmod
