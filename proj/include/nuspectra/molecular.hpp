#pragma once

#include <string>
#include <vector>

namespace nuspectra {

/// 1/(1+x)^2 ~ C0 + C1 e^(-alpha x) + C2 e^(-2 alpha x) near x = 0.
struct MorseRotationCoeffs {
    double C0, C1, C2;
};
MorseRotationCoeffs morse_rotation_coeffs(double alpha);
/// Left side minus the three-term approximation; O(x^3).
double morse_rotation_defect(double alpha, double x);

/// 1/(1+x)^2 ~ C0 + e^(-(1+x) x0) (C1 + C2 e^(-(1+x) x0)) / (1 - e^(-(1+x) x0))^2
/// around the minimum r = a x0 of the modified Hulthen well, e^x0 = 2b - 1.
struct ModHulthenRotationCoeffs {
    double C0, C1, C2, x0;
};
ModHulthenRotationCoeffs mod_hulthen_rotation_coeffs(double b);
double mod_hulthen_rotation_defect(double b, double x);
/// Leading x^3 coefficient of the defect.
double mod_hulthen_rotation_cubic(double b);

/// Vibration-rotation level split into its parts. Terms a form does not
/// have are zero. `raw` is the l = 0 level of the same v.
struct RotationTerms {
    double raw = 0.0;
    double vibrational = 0.0;
    double rotational = 0.0;
    double coupling = 0.0;
    double second_order = 0.0;
    double total = 0.0;
};

/// Morse well with centrifugal term, energies in the units of h2m.
/// `total` is the expansion through l^2 (l+1)^2.
RotationTerms morse_rotation_terms(double D, double alpha, double r0, double h2m, int l, int v);
/// Energy from the rotated NU parameters without expanding in l(l+1).
double morse_rotation_unexpanded(double D, double alpha, double r0, double h2m, int l, int v);

struct ModHulthenRotated {
    double alpha1_sq, beta1_sq, beta2_sq, b1, kappa1;
};
ModHulthenRotated mod_hulthen_rotated(double alpha_sq, double beta2, double b, int l);
RotationTerms mod_hulthen_rotation_terms(double V0, double beta2, double b, double a, int l, int v);

/// phi(b) = (2b-1) ln(2b-1) / (2(b-1)), monotone increasing from 1 at b -> 1.
double morse_phi(double b);

struct ModHulthenParams {
    double V0, b, a;
};
/// Modified Hulthen well with the same depth, minimum position and curvature
/// ratio as a Morse well: phi(b) = alpha, V0 = 4(b-1) D, a = r0 / ln(2b-1).
ModHulthenParams match_morse_to_modified_hulthen(double D, double alpha, double r0);
/// Generalized Morse D (1 - (e^(a r0)-1)/(e^(a r)-1))^2 minus its limit D is a
/// modified Hulthen well with these parameters.
ModHulthenParams generalized_morse_params(double D, double a_rate, double r0);

/// -V0 e^(-r/a) (1 - b e^(-r/a)) / (1 - e^(-r/a))^2
double mod_hulthen_potential(const ModHulthenParams& m, double r);
/// D (e^(-2 alpha x) - 2 e^(-alpha x)) with x = (r - r0)/r0.
double morse_potential(double D, double alpha, double r0, double r);

/// Both wells of a matched pair sampled on one grid, with their minima located
/// from the zeros of the analytic derivatives.
struct PotentialOverlay {
    ModHulthenParams hulthen;
    double D = 0.0, alpha = 0.0, r0 = 0.0;
    double hulthen_min = 0.0, morse_min = 0.0;
    std::vector<double> r, morse, mod_hulthen;
};
/// Morse well with D = V0/(4(b-1)), r0 = a ln(2b-1), alpha = phi(b) next to the modified Hulthen well.
PotentialOverlay morse_hulthen_overlay(const ModHulthenParams& m, double r_lo, double r_hi, int points);

struct MoleculeRow {
    std::string name;
    double h2m_r0sq; ///< hbar^2/(2 m r0^2), cm^-1
    double D;        ///< cm^-1
    double alpha;
    double b;
    double V0; ///< cm^-1
};
const std::vector<MoleculeRow>& molecule_table();

struct MoleculeComparison {
    MoleculeRow table;
    double b = 0.0;  ///< from phi(b) = alpha
    double V0 = 0.0; ///< 4(b-1)D with the recomputed b
    double b_rel_error = 0.0;
    double V0_rel_error = 0.0;
    double D_ev = 0.0, V0_ev = 0.0, V0_table_ev = 0.0;
    bool consistent = false;
};
/// Consistent when b agrees to 1e-3 absolute and V0 to 0.05 %.
MoleculeComparison compare_molecule(const MoleculeRow& row);

} // namespace nuspectra
