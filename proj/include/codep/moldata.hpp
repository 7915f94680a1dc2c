#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace codep {

enum class Parity { even, odd };

// Parity of a rotational level as a function of J, declared per electronic
// label in the data file header.
enum class ParityRule {
    even_j_even, // J even -> even parity, J odd -> odd
    even_j_odd,  // J even -> odd parity,  J odd -> even
};

Parity parity_for(ParityRule rule, int J);

struct StateKey {
    std::string label;
    int nu = 0;
    int J = 0;
    int M = 0;

    friend bool operator==(const StateKey&, const StateKey&) = default;
    std::string str() const;
};

struct RoVibState {
    std::string label;
    int nu = 0;
    int J = 0;
    int M = 0;
    double energy = 0.0; // J
    Parity parity = Parity::even;

    StateKey key() const { return {label, nu, J, M}; }
};

struct DipolePartner {
    int state = -1;   // index into MoleculeModel states
    double mu = 0.0;  // C m, real
};

// Immutable after construction; safe for shared concurrent reads.
class MoleculeModel {
public:
    struct ParityDecl {
        std::string label;
        ParityRule rule;
    };

    MoleculeModel(std::string name, double mass_kg, double rotational_constant_cm,
                  std::string ground_label, std::vector<ParityDecl> parity_rules,
                  std::vector<RoVibState> states,
                  std::vector<std::tuple<int, int, double>> dipoles);

    const std::string& name() const { return name_; }
    double mass() const { return mass_; }                       // kg
    double rotational_constant_cm() const { return rot_const_cm_; }
    const std::string& ground_label() const { return ground_label_; }

    std::size_t size() const { return states_.size(); }
    const RoVibState& state(int i) const { return states_[static_cast<std::size_t>(i)]; }
    const std::vector<RoVibState>& states() const { return states_; }

    std::optional<int> find(const StateKey& key) const;
    // find() that throws ValidationError when absent.
    int require(const StateKey& key) const;

    bool is_ground(int i) const { return state(i).label == ground_label_; }

    // Transition dipole between two states; 0.0 when no entry exists.
    double dipole(int i, int j) const;
    std::span<const DipolePartner> partners(int i) const;

    std::size_t dipole_count() const { return n_dipoles_; }

    // Deterministic text form: sorted states and dipole entries, fixed
    // formatting. Equal models produce byte-identical text.
    std::string canonical_text() const;

private:
    std::string name_;
    double mass_ = 0.0;
    double rot_const_cm_ = 0.0;
    std::string ground_label_;
    std::vector<ParityDecl> parity_rules_;
    std::vector<RoVibState> states_;
    std::vector<std::vector<DipolePartner>> rows_;
    std::size_t n_dipoles_ = 0;
};

// Parses a molecular data document ([meta]/[states]/[dipoles] sections).
// Every quantity carries a unit tag; unknown keys and selection-rule
// violations are rejected with a line diagnostic.
MoleculeModel load_molecule_text(const std::string& text, const std::string& origin = "<string>");
MoleculeModel load_molecule(const std::string& path);

struct RuleViolation {
    std::string rule; // "parity" or "delta-J"
    StateKey a;
    StateKey b;
    std::string detail;
};

struct PairEligibility {
    bool eligible = false;
    std::string reason; // "interference-eligible" or the violated condition
};

// Same-parity, delta-J = 2, delta-M = 0 check for a ground pair.
PairEligibility interference_eligibility(const MoleculeModel& model, int a, int b);

struct ValidationReport {
    std::vector<RuleViolation> violations;          // dipole entries breaking rules
    std::vector<std::pair<int, int>> eligible_pairs; // ground pairs usable for interference
};

// Report-only scan: flags dipole entries violating parity or |delta-J| = 1
// and lists every ground pair eligible for interference.
ValidationReport validate_transitions(const MoleculeModel& model);

} // namespace codep
