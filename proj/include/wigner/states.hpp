#pragma once

#include <complex>
#include <string>
#include <variant>
#include <vector>

namespace wigner {

// State family, atomic units m = hbar = omega = 1 throughout. Displacements
// are given as phase-space coordinates (q0, p0); the squeezing strength s and
// angle phi enter through eta = s e^(i phi).
struct FockState {
    int n = 0;
};

struct CoherentState {
    double q0 = 0.0, p0 = 0.0;
};

struct SqueezedVacuumState {
    double s = 0.0, phi = 0.0, q0 = 0.0, p0 = 0.0;
};

struct SqueezedDisplacedFockState {
    int n = 0;
    double s = 0.0, phi = 0.0, q0 = 0.0, p0 = 0.0;
};

// Superposition of two coherent packets at +-q0 with common momentum p0.
struct CatState {
    double q0 = 0.0, p0 = 0.0;
};

using StateSpec = std::variant<FockState, CoherentState, SqueezedVacuumState,
                               SqueezedDisplacedFockState, CatState>;

// Normalization constant of the cat wave function,
//   norm = (1 + cos(2 p0 q0) exp(-q0^2))^(-1/2).
struct CatNormalization {
    double q0 = 0.0, p0 = 0.0;
    double norm = 1.0;
};

// Throws std::invalid_argument when a parameter is out of range
// (n < 0, s < 0, cat q0 < 0, non-finite values).
void validate_state(const StateSpec& spec);

// ---- closed-form Wigner evaluators --------------------------------------
//
// All are normalized on the (q, p) chart: integral W dq dp = 1 and
// |W| <= 1/pi for every pure state.

double wigner_fock(int n, double q, double p);

double wigner_sdf(const SqueezedDisplacedFockState& st, double q, double p);

// Gaussian closed form, stated for phi = 0 only; rejects phi != 0
// (route those through wigner_sdf with n = 0).
double wigner_squeezed_vacuum(const SqueezedVacuumState& st, double q, double p);

CatNormalization cat_normalization(double q0, double p0);

double wigner_cat(double q0, double p0, double q, double p);

// Dispatch on the state family (squeezed vacuum with phi != 0 is routed
// through the squeezed-displaced-Fock form).
double wigner_value(const StateSpec& spec, double q, double p);

// ---- position-space wavefunctions ----------------------------------------

// Harmonic oscillator eigenfunction psi_n(q), normalized, by the stable
// recurrence  h_{k+1} = sqrt(2/(k+1)) q h_k - sqrt(k/(k+1)) h_{k-1}.
double hermite_function(int n, double q);

// True when the state has a wavefunction path (everything except
// squeezed-displaced-Fock states with phi != 0).
bool has_wavefunction(const StateSpec& spec);

// psi(q), normalized to unit L2 norm. Throws std::invalid_argument for
// states without a wavefunction path.
std::complex<double> wavefunction(const StateSpec& spec, double q);

// ---- state string grammar -------------------------------------------------
//
//   fock:n=3
//   coherent:q0=1,p0=2
//   sqvac:s=1,phi=0,q0=0,p0=0
//   sdf:n=3,s=0.5,phi=0.5235987756,q0=0,p0=0
//   cat:q0=2,p0=4
//
// Keys may appear in any order; missing keys default to 0; unknown keys are
// rejected. Throws std::invalid_argument naming the offending token.
StateSpec parse_state_spec(const std::string& text);

std::string format_state_spec(const StateSpec& spec);

std::string state_family_name(const StateSpec& spec);

// ---- batched evaluation ----------------------------------------------------

// Evaluates W along constant-q rows of a fixed p-node set. Per-grid caches
// (fringe cosines, momentum Gaussians, squeeze coefficients) are built once
// in the constructor; row() is const and safe to call concurrently.
class WignerRowEvaluator {
public:
    WignerRowEvaluator(const StateSpec& spec, std::vector<double> p_nodes);

    // out.size() must equal p_nodes().size().
    void row(double q, std::vector<double>& out) const;

    const std::vector<double>& p_nodes() const { return p_nodes_; }

private:
    struct FockPlan {
        int n;
        double sign;
    };
    struct SdfPlan {
        int n;
        double sign;
        double q0, p0;
        double cqq, cqp, cpp, cpq;  // u = cqq dq + cqp dp, v = cpp dp + cpq dq
    };
    struct GaussPlan {  // coherent / squeezed vacuum with phi = 0
        double q0, p0;
        double aq;  // q-axis inverse variance e^(2s)
        std::vector<double> p_gauss;
    };
    struct CatPlan {
        double q0, p0;
        double peak_amp, fringe_amp;
        std::vector<double> p_gauss;   // exp(-(p - p0)^2)
        std::vector<double> p_fringe;  // cos(2 p q0)
    };
    using Plan = std::variant<FockPlan, SdfPlan, GaussPlan, CatPlan>;

    std::vector<double> p_nodes_;
    std::vector<double> p_sq_;  // p^2 cache for radial plans
    Plan plan_;
};

}  // namespace wigner
