#pragma once

#include "sasaki/app/config.hpp"
#include "sasaki/generators.hpp"

#include <map>
#include <optional>
#include <string>

namespace sasaki::app {

struct InputDescriptor {
    std::string source;  // "family" or "file"
    std::string family;
    std::map<std::string, double> params;
    std::string file;
    std::string evaluation = "analytic";  // or "grid"
    Json to_json() const;
};

struct BiharmonicReport {
    InputDescriptor input;
    int n = 1;
    double a = 1, c = 1;
    int structure_index = 1;
    std::string object = "curve";  // or "immersion"

    double legendre = 0, speed = 0;
    double tension_sup = 0, tension_inf = 0;
    double bitension_sup = 0, bitension_l2 = 0, path_disagreement = 0;
    Json extra = Json::object();  // further residuals by name

    ClassificationVerdict verdict;
    std::string label;  // proper-biharmonic, biharmonic (not proper), non-biharmonic, indeterminate
    std::optional<std::string> expected_case;
    bool pass = false;
    std::vector<std::string> failures;

    BiharmonicOptions tolerances;
    Json config;
    double wall_time = 0;
    unsigned long long seed = 0;

    int exit_code() const { return pass ? 0 : 1; }
};

Json to_json(const BiharmonicReport& r);
Json verdict_json(const ClassificationVerdict& v);

// The curve family each explicit family is constructed to fall into.
std::optional<std::string> expected_case(CurveFamily f);

// A unit-speed Legendre great circle: the geodesic fixture.
SampledCurve great_circle(const SasakianSphere& S, int samples);

// Re-attaches the analytic map when the file's family descriptor reproduces its points.
bool reattach_analytic(SampledCurve& curve, int n, double a);
bool reattach_analytic(ImmersionGrid& grid, int n, double a);

BiharmonicReport verify_curve(const SasakianSphere& S, const SampledCurve& curve, const InputDescriptor& input,
                              const Config& cfg, std::optional<std::string> expected = std::nullopt);
BiharmonicReport verify_immersion(const SasakianSphere& S, const ImmersionGrid& grid, const InputDescriptor& input,
                                  const Config& cfg);

}  // namespace sasaki::app
