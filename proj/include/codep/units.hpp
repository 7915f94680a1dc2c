#pragma once

#include <string>
#include <string_view>

namespace codep {

// Supported unit tags. Spectroscopic energy-like tags (cm-1, rad/s, J, eV)
// form one convertible family; lengths, dipoles, fields and masses their own.
enum class Unit {
    WavenumberCm, // cm-1
    RadPerSec,    // rad/s
    Joule,        // J
    ElectronVolt, // eV
    Debye,        // D
    CoulombMeter, // C*m
    VoltPerCm,    // V/cm
    VoltPerM,     // V/m
    Micrometer,   // um
    Nanometer,    // nm
    Meter,        // m
    AtomicMass,   // u
    Kilogram,     // kg
};

enum class Dimension { Energy, Dipole, Field, Length, Mass };

Dimension dimension_of(Unit u);

// Parses a unit tag ("cm-1", "rad/s", "D", "V/cm", "um", "u", ...).
// Throws ParseError for unknown tags.
Unit parse_unit(std::string_view tag);

std::string unit_name(Unit u);

// Converts value between two tags of the same dimension. Throws
// ValidationError when dimensions are incompatible. Round-trips are the
// identity to better than 1e-12 relative.
double convert_unit(double value, Unit from, Unit to);

// Convenience: value in `from` expressed in the SI base of its dimension
// (J, C*m, V/m, m, kg).
double to_si(double value, Unit from);

} // namespace codep
