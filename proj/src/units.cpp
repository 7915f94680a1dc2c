#include "codep/units.hpp"

#include "codep/constants.hpp"
#include "codep/error.hpp"

namespace codep {

namespace {

// Multiplicative factor to the SI base of the unit's dimension.
double si_factor(Unit u) {
    switch (u) {
    case Unit::WavenumberCm: return kWavenumberJoule;
    case Unit::RadPerSec: return kHbar;
    case Unit::Joule: return 1.0;
    case Unit::ElectronVolt: return kElectronVolt;
    case Unit::Debye: return kDebye;
    case Unit::CoulombMeter: return 1.0;
    case Unit::VoltPerCm: return 100.0;
    case Unit::VoltPerM: return 1.0;
    case Unit::Micrometer: return 1e-6;
    case Unit::Nanometer: return 1e-9;
    case Unit::Meter: return 1.0;
    case Unit::AtomicMass: return kAtomicMassUnit;
    case Unit::Kilogram: return 1.0;
    }
    throw Error("unreachable unit");
}

} // namespace

Dimension dimension_of(Unit u) {
    switch (u) {
    case Unit::WavenumberCm:
    case Unit::RadPerSec:
    case Unit::Joule:
    case Unit::ElectronVolt: return Dimension::Energy;
    case Unit::Debye:
    case Unit::CoulombMeter: return Dimension::Dipole;
    case Unit::VoltPerCm:
    case Unit::VoltPerM: return Dimension::Field;
    case Unit::Micrometer:
    case Unit::Nanometer:
    case Unit::Meter: return Dimension::Length;
    case Unit::AtomicMass:
    case Unit::Kilogram: return Dimension::Mass;
    }
    throw Error("unreachable unit");
}

Unit parse_unit(std::string_view tag) {
    if (tag == "cm-1" || tag == "cm^-1" || tag == "1/cm") return Unit::WavenumberCm;
    if (tag == "rad/s") return Unit::RadPerSec;
    if (tag == "J") return Unit::Joule;
    if (tag == "eV") return Unit::ElectronVolt;
    if (tag == "D" || tag == "debye") return Unit::Debye;
    if (tag == "C*m" || tag == "C.m" || tag == "Cm") return Unit::CoulombMeter;
    if (tag == "V/cm") return Unit::VoltPerCm;
    if (tag == "V/m") return Unit::VoltPerM;
    if (tag == "um") return Unit::Micrometer;
    if (tag == "nm") return Unit::Nanometer;
    if (tag == "m") return Unit::Meter;
    if (tag == "u" || tag == "amu") return Unit::AtomicMass;
    if (tag == "kg") return Unit::Kilogram;
    throw ParseError("unknown unit tag '" + std::string(tag) + "'");
}

std::string unit_name(Unit u) {
    switch (u) {
    case Unit::WavenumberCm: return "cm-1";
    case Unit::RadPerSec: return "rad/s";
    case Unit::Joule: return "J";
    case Unit::ElectronVolt: return "eV";
    case Unit::Debye: return "D";
    case Unit::CoulombMeter: return "C*m";
    case Unit::VoltPerCm: return "V/cm";
    case Unit::VoltPerM: return "V/m";
    case Unit::Micrometer: return "um";
    case Unit::Nanometer: return "nm";
    case Unit::Meter: return "m";
    case Unit::AtomicMass: return "u";
    case Unit::Kilogram: return "kg";
    }
    throw Error("unreachable unit");
}

double convert_unit(double value, Unit from, Unit to) {
    if (dimension_of(from) != dimension_of(to)) {
        throw ValidationError("cannot convert " + unit_name(from) + " to " + unit_name(to) +
                              ": incompatible dimensions");
    }
    if (from == to) return value;
    return value * (si_factor(from) / si_factor(to));
}

double to_si(double value, Unit from) {
    return value * si_factor(from);
}

} // namespace codep
