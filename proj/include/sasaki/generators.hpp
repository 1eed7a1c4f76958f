#pragma once

#include "sasaki/frenet.hpp"
#include "sasaki/immersion.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sasaki {

enum class CurveFamily { Thm39Circle, Thm39Helix, Thm310Circle, Thm310Helix, Thm311 };
enum class ImmersionFamily { Prop42Surface, Prop44Surface, Prop53X1, Prop53X2 };

std::string to_string(CurveFamily f);
std::string to_string(ImmersionFamily f);
CurveFamily parse_curve_family(const std::string& s);        // accepts '-' or '_'
ImmersionFamily parse_immersion_family(const std::string& s);
bool is_curve_family(const std::string& s);

struct CurveSpec {
    CurveFamily family = CurveFamily::Thm39Circle;
    int n = 2;
    double a = 1.0;
    double kappa1 = 0.0;       // helices only
    std::vector<Vec> basis;    // empty: default basis
    double detune = 1.0;       // factor applied to the frequency A (amplitudes re-solved)
    double twist = 0.0;        // helix basis rotation angle (see default_basis)
};

// Quantities fixed by the family and its parameters.
struct FamilyData {
    double A = 0.0, B = 0.0;   // nominal frequencies (B = 0 for circles)
    double c = 1.0;
    double kappa1 = 0.0, kappa2 = 0.0;
    std::vector<double> frequencies;  // actual frequencies after detuning
    bool periodic = false;
    double domain = 0.0;  // period, or the sampled length for non-periodic curves
    int basis_size = 0;
};

// Validates parameter ranges and returns derived quantities. Throws InvalidInput.
FamilyData family_data(const CurveSpec& spec);

// Canonical basis vectors for the family (thm311 uses e1, e2 in the slots of e1, e3).
// thm39_helix with n = 2 needs kappa1: the basis is e1, cosθ e2 + sinθ Ie1, e3, Ie3 with
// sinθ = -B/A. A nonzero twist rotates e2 toward Ie1 and e4 toward Ie3 (n >= 3).
std::vector<Vec> default_basis(CurveFamily family, int n, std::optional<double> kappa1 = std::nullopt,
                               double twist = 0.0);

// Checks orthonormality and the family's constraint inner products; throws InvalidInput
// naming the first violated one.
void check_basis(const CurveSpec& spec, const std::vector<Vec>& basis, double tol = 1e-12);

std::shared_ptr<TrigMap> curve_map(const CurveSpec& spec);
SampledCurve make_curve(const CurveSpec& spec, int samples = 512);
CurveSpec detuned(const CurveSpec& spec, double factor = 1.01);

struct ImmersionSpec {
    ImmersionFamily family = ImmersionFamily::Prop42Surface;
    int n = 2;
    double a = 1.0;
    double kappa1 = 0.6;
    std::vector<Vec> basis;
    std::vector<int> resolution;  // per parameter direction; default 64 (48 for three parameters)
};

// The base integral surface of the prop42 family: (1/√2)(e^{iu}, i e^{-iu} sin√2v, i e^{-iu} cos√2v).
std::shared_ptr<TrigMap> integral_surface_map();
ImmersionGrid integral_surface_grid(int resolution = 64);

// Checks the two-structure constraint list of the three-parameter families.
void check_two_structure_basis(const std::vector<Vec>& basis, double A, double B, bool helix, double tol = 1e-12);

ImmersionGrid make_immersion(const ImmersionSpec& spec);
std::shared_ptr<TrigMap> immersion_map(const ImmersionSpec& spec, std::vector<GridAxis>* axes = nullptr);

}  // namespace sasaki
