#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "crossmode/errors.hpp"

namespace crossmode {

using Complex = std::complex<double>;

enum class Species {
    ScalarBoson,  // spin 0, particle + antiparticle channels
    VectorBoson,  // spin 1 (photon), particle channel only, massless
    SpinorFermion // spin 1/2, particle + antiparticle channels
};

std::string to_string(Species species);
Species species_from_string(const std::string& name);
bool is_fermion(Species species);

/// Relativistic single-mode energy sqrt(|k|^2 + m^2) in natural units.
/// Throws DegenerateModeError for a massless zero-wavevector mode.
double dispersion(const Eigen::Vector3d& wavevector, double mass);

/// One plane-wave mode of a quantized field. `spin_index` is a discrete
/// orthonormal label: 0 for scalars, polarization 1 or 2 for photons,
/// +1/-1 (spin up/down in half units) for fermions. Phases are stored
/// per mode and normalized into [0, 2*pi).
struct ModeLabel {
    std::string id;
    Species species = Species::ScalarBoson;
    Eigen::Vector3d wavevector = Eigen::Vector3d::Zero();
    double mass = 0.0;
    double phase = 0.0;
    int spin_index = 0;

    double energy() const { return dispersion(wavevector, mass); }

    static ModeLabel make(std::string id, Species species, const Eigen::Vector3d& wavevector,
                          double mass = 0.0, double phase = 0.0, int spin_index = 0);
};

/// Rectangular quantization volume centered at the origin.
struct BoxDomain {
    Eigen::Vector3d side_lengths = Eigen::Vector3d::Ones();

    BoxDomain() = default;
    explicit BoxDomain(const Eigen::Vector3d& sides);
    static BoxDomain unit() { return BoxDomain(); }

    double volume() const { return side_lengths.prod(); }
};

/// Closed form of the single-axis factor of the box overlap integral:
/// 2*sin(dk*L/2)/dk, with the dk -> 0 limit L and exact zeros where
/// dk*L is a representable nonzero multiple of 2*pi.
double box_axis_factor(double dk, double length);

/// Finite-box cross-correlation integral of two plane-wave modes,
/// e^{i(phase_m - phase_n)} * prod_j 2 sin(dk_j L_j / 2)/dk_j with
/// dk = k_m - k_n. Equals V * e^{i(phase_m - phase_n)} at k_n = k_m and
/// its magnitude never exceeds the box volume.
Complex overlap_integral(const Eigen::Vector3d& k_n, const Eigen::Vector3d& k_m, double phase_n,
                         double phase_m, const BoxDomain& box);

enum class LadderKind { Create, Annihilate };
enum class Channel { Particle, Antiparticle };

/// One term of a multimode field expansion: amplitude (2*energy)^{-1/2}
/// times a ladder operator times e^{i*wave_sign*(k.r + phase)}.
struct FieldTerm {
    std::size_t mode_index = 0;
    LadderKind kind = LadderKind::Annihilate;
    Channel channel = Channel::Particle;
    double amplitude = 0.0;
    int wave_sign = -1;
};

/// Mode-sum expansion of a field operator. The conjugate expansion is
/// generated term by term so the pair stays consistent.
struct FieldExpansion {
    Species species = Species::ScalarBoson;
    std::vector<ModeLabel> modes;
    std::vector<FieldTerm> terms;

    FieldExpansion conjugate() const;
};

/// Builds the annihilation-side field expansion for `modes`. Scalars and
/// fermions get one particle annihilator and one antiparticle creator per
/// mode; photons collapse the antiparticle channel onto the particle one.
FieldExpansion build_field(Species species, const std::vector<ModeLabel>& modes);

} // namespace crossmode
