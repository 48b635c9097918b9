#pragma once

#include <string>
#include <string_view>

namespace socbec {

enum class DriveMode { none, resonant_sine };
enum class InitialPhase { plain, imprinted };

/// Dimensionless model parameters of the driven spin-orbit coupled condensate.
///
/// The Hamiltonian is alpha sigma_z p + p^2/2 + (delta/2) sigma_x
/// + (x - d(t))^2 / 2 + g1 |Psi|^2, with g1 * N = g1N. The trap term is
/// dropped when `trap_on` is false.
struct ModelParams {
    double g1N = 0.0;
    double alpha = 0.0;
    double delta = 0.0;
    double d0 = 0.0;
    DriveMode drive = DriveMode::none;
    InitialPhase init_phase = InitialPhase::plain;
    bool trap_on = true;

    /// Throws ConfigError on negative g1N, d0 or delta, or non-finite values.
    void validate() const;
};

std::string to_string(DriveMode mode);
std::string to_string(InitialPhase phase);
DriveMode parse_drive_mode(std::string_view text);
InitialPhase parse_initial_phase(std::string_view text);

} // namespace socbec
