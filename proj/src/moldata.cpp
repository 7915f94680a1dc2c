#include "codep/moldata.hpp"

#include "codep/constants.hpp"
#include "codep/error.hpp"
#include "codep/units.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

namespace codep {

Parity parity_for(ParityRule rule, int J) {
    const bool j_even = (J % 2) == 0;
    switch (rule) {
    case ParityRule::even_j_even: return j_even ? Parity::even : Parity::odd;
    case ParityRule::even_j_odd: return j_even ? Parity::odd : Parity::even;
    }
    throw Error("unreachable parity rule");
}

std::string StateKey::str() const {
    std::ostringstream os;
    os << "(" << label << "," << nu << "," << J << "," << M << ")";
    return os.str();
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

struct LineCtx {
    const std::string& origin;
    int number;
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(origin + ":" + std::to_string(number) + ": " + msg);
    }
};

double parse_number(const std::string& tok, const LineCtx& ctx) {
    try {
        std::size_t pos = 0;
        double v = std::stod(tok, &pos);
        if (pos != tok.size()) ctx.fail("malformed number '" + tok + "'");
        return v;
    } catch (const std::exception&) {
        ctx.fail("malformed number '" + tok + "'");
    }
}

int parse_int(const std::string& tok, const LineCtx& ctx) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) ctx.fail("malformed integer '" + tok + "'");
        return v;
    } catch (const std::exception&) {
        ctx.fail("malformed integer '" + tok + "'");
    }
}

} // namespace

MoleculeModel::MoleculeModel(std::string name, double mass_kg, double rotational_constant_cm,
                             std::string ground_label, std::vector<ParityDecl> parity_rules,
                             std::vector<RoVibState> states,
                             std::vector<std::tuple<int, int, double>> dipoles)
    : name_(std::move(name)),
      mass_(mass_kg),
      rot_const_cm_(rotational_constant_cm),
      ground_label_(std::move(ground_label)),
      parity_rules_(std::move(parity_rules)),
      states_(std::move(states)) {
    if (mass_ <= 0.0) throw ValidationError("molecule mass must be positive");
    for (const auto& s : states_) {
        if (s.J < 0 || s.nu < 0) throw ValidationError("state " + s.key().str() + ": nu and J must be >= 0");
        if (std::abs(s.M) > s.J) throw ValidationError("state " + s.key().str() + ": |M| must be <= J");
        if (!std::isfinite(s.energy)) throw ValidationError("state " + s.key().str() + ": non-finite energy");
    }
    // J-ladder energies must increase with J at fixed (label, nu, M).
    std::map<std::tuple<std::string, int, int, int>, double> ladder;
    for (const auto& s : states_) ladder[{s.label, s.nu, s.M, s.J}] = s.energy;
    for (auto it = ladder.begin(); it != ladder.end(); ++it) {
        auto next = std::next(it);
        if (next == ladder.end()) continue;
        const auto& [la, nua, Ma, Ja] = it->first;
        const auto& [lb, nub, Mb, Jb] = next->first;
        if (la == lb && nua == nub && Ma == Mb && it->second >= next->second) {
            throw ValidationError("energies not increasing with J in ladder (" + la + ",nu=" +
                                  std::to_string(nua) + ",M=" + std::to_string(Ma) + ") between J=" +
                                  std::to_string(Ja) + " and J=" + std::to_string(Jb));
        }
    }
    rows_.assign(states_.size(), {});
    for (const auto& [i, j, mu] : dipoles) {
        if (i < 0 || j < 0 || i >= static_cast<int>(states_.size()) || j >= static_cast<int>(states_.size()))
            throw ValidationError("dipole entry references missing state");
        if (!std::isfinite(mu)) throw ValidationError("non-finite dipole value");
        rows_[static_cast<std::size_t>(i)].push_back({j, mu});
        rows_[static_cast<std::size_t>(j)].push_back({i, mu});
    }
    for (auto& row : rows_)
        std::sort(row.begin(), row.end(), [](const DipolePartner& a, const DipolePartner& b) {
            return a.state < b.state;
        });
    n_dipoles_ = dipoles.size();
}

std::optional<int> MoleculeModel::find(const StateKey& key) const {
    for (std::size_t i = 0; i < states_.size(); ++i)
        if (states_[i].key() == key) return static_cast<int>(i);
    return std::nullopt;
}

int MoleculeModel::require(const StateKey& key) const {
    auto i = find(key);
    if (!i) throw ValidationError("state " + key.str() + " not present in model");
    return *i;
}

double MoleculeModel::dipole(int i, int j) const {
    for (const auto& p : partners(i))
        if (p.state == j) return p.mu;
    return 0.0;
}

std::span<const DipolePartner> MoleculeModel::partners(int i) const {
    return rows_[static_cast<std::size_t>(i)];
}

std::string MoleculeModel::canonical_text() const {
    std::vector<int> order(states_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    auto key_less = [&](int a, int b) {
        const auto& sa = states_[static_cast<std::size_t>(a)];
        const auto& sb = states_[static_cast<std::size_t>(b)];
        return std::tie(sa.label, sa.nu, sa.J, sa.M) < std::tie(sb.label, sb.nu, sb.J, sb.M);
    };
    std::sort(order.begin(), order.end(), key_less);
    std::vector<int> rank(states_.size());
    for (std::size_t i = 0; i < order.size(); ++i) rank[static_cast<std::size_t>(order[i])] = static_cast<int>(i);

    char buf[128];
    std::string out;
    out += "[meta]\n";
    out += "name = " + name_ + "\n";
    std::snprintf(buf, sizeof buf, "mass = %.17g kg\n", mass_);
    out += buf;
    std::snprintf(buf, sizeof buf, "rotational_constant = %.17g cm-1\n", rot_const_cm_);
    out += buf;
    out += "ground = " + ground_label_ + "\n";
    auto rules = parity_rules_;
    std::sort(rules.begin(), rules.end(),
              [](const ParityDecl& a, const ParityDecl& b) { return a.label < b.label; });
    for (const auto& r : rules)
        out += "parity " + r.label + " " +
               (r.rule == ParityRule::even_j_even ? std::string("even_j_even") : std::string("even_j_odd")) + "\n";
    out += "[states]\n";
    for (int i : order) {
        const auto& s = states_[static_cast<std::size_t>(i)];
        std::snprintf(buf, sizeof buf, "%s %d %d %d %.17g J\n", s.label.c_str(), s.nu, s.J, s.M, s.energy);
        out += buf;
    }
    out += "[dipoles]\n";
    std::vector<std::tuple<int, int, double>> entries;
    for (std::size_t i = 0; i < states_.size(); ++i)
        for (const auto& p : rows_[i])
            if (static_cast<int>(i) < p.state)
                entries.emplace_back(rank[i], rank[static_cast<std::size_t>(p.state)], p.mu);
    for (auto& [a, b, mu] : entries)
        if (a > b) std::swap(a, b);
    std::sort(entries.begin(), entries.end());
    for (const auto& [a, b, mu] : entries) {
        const auto& sa = states_[static_cast<std::size_t>(order[static_cast<std::size_t>(a)])];
        const auto& sb = states_[static_cast<std::size_t>(order[static_cast<std::size_t>(b)])];
        std::snprintf(buf, sizeof buf, "%s %d %d %d  %s %d %d %d  %.17g C*m\n", sa.label.c_str(), sa.nu,
                      sa.J, sa.M, sb.label.c_str(), sb.nu, sb.J, sb.M, mu);
        out += buf;
    }
    return out;
}

namespace {

struct RawState {
    StateKey key;
    double energy_si;
    int line;
};

struct RawDipole {
    StateKey a, b;
    double mu_si;
    int line;
};

} // namespace

MoleculeModel load_molecule_text(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::string section;

    std::string name = "unnamed";
    std::optional<double> mass;
    std::optional<double> rot_const;
    std::string ground_label = "X";
    std::vector<MoleculeModel::ParityDecl> rules;
    std::vector<RawState> raw_states;
    std::vector<RawDipole> raw_dipoles;

    auto rule_for = [&](const std::string& label, const LineCtx& ctx) -> ParityRule {
        for (const auto& r : rules)
            if (r.label == label) return r.rule;
        ctx.fail("no parity rule declared for label '" + label + "'");
    };

    while (std::getline(in, line)) {
        ++lineno;
        LineCtx ctx{origin, lineno};
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto toks = tokenize(line);
        if (toks.empty()) continue;

        if (toks[0].front() == '[') {
            if (toks.size() != 1) ctx.fail("malformed section header");
            section = toks[0];
            if (section != "[meta]" && section != "[states]" && section != "[dipoles]")
                ctx.fail("unknown section " + section);
            continue;
        }

        if (section == "[meta]") {
            if (toks[0] == "parity") {
                if (toks.size() != 3) ctx.fail("parity declaration needs: parity <label> <rule>");
                ParityRule rule;
                if (toks[2] == "even_j_even") rule = ParityRule::even_j_even;
                else if (toks[2] == "even_j_odd") rule = ParityRule::even_j_odd;
                else ctx.fail("unknown parity rule '" + toks[2] + "'");
                rules.push_back({toks[1], rule});
                continue;
            }
            if (toks.size() < 3 || toks[1] != "=") ctx.fail("meta entries have the form: key = value [unit]");
            const std::string& key = toks[0];
            if (key == "name") {
                name = toks[2];
            } else if (key == "ground") {
                ground_label = toks[2];
            } else if (key == "mass") {
                if (toks.size() != 4) ctx.fail("mass needs a value and a unit");
                Unit u = parse_unit(toks[3]);
                if (dimension_of(u) != Dimension::Mass) ctx.fail("mass unit must be u or kg");
                mass = to_si(parse_number(toks[2], ctx), u);
            } else if (key == "rotational_constant") {
                if (toks.size() != 4) ctx.fail("rotational_constant needs a value and a unit");
                if (parse_unit(toks[3]) != Unit::WavenumberCm)
                    ctx.fail("rotational_constant must be given in cm-1");
                rot_const = parse_number(toks[2], ctx);
            } else {
                ctx.fail("unknown meta key '" + key + "'");
            }
        } else if (section == "[states]") {
            if (toks.size() != 6) ctx.fail("state records have the form: label nu J M energy unit");
            Unit u = parse_unit(toks[5]);
            if (dimension_of(u) != Dimension::Energy) ctx.fail("state energy unit must be an energy tag");
            StateKey key{toks[0], parse_int(toks[1], ctx), parse_int(toks[2], ctx), parse_int(toks[3], ctx)};
            if (key.J < 0 || key.nu < 0) ctx.fail("state " + key.str() + ": nu and J must be >= 0");
            if (std::abs(key.M) > key.J) ctx.fail("state " + key.str() + ": |M| must be <= J");
            for (const auto& s : raw_states)
                if (s.key == key) ctx.fail("duplicate state " + key.str());
            raw_states.push_back({key, to_si(parse_number(toks[4], ctx), u), lineno});
        } else if (section == "[dipoles]") {
            if (toks.size() != 10)
                ctx.fail("dipole records have the form: label nu J M  label nu J M  value unit");
            Unit u = parse_unit(toks[9]);
            if (dimension_of(u) != Dimension::Dipole) ctx.fail("dipole unit must be D or C*m");
            StateKey a{toks[0], parse_int(toks[1], ctx), parse_int(toks[2], ctx), parse_int(toks[3], ctx)};
            StateKey b{toks[4], parse_int(toks[5], ctx), parse_int(toks[6], ctx), parse_int(toks[7], ctx)};
            double mu = to_si(parse_number(toks[8], ctx), u);

            // Electric-dipole selection rules for z-polarized light are
            // enforced at ingestion: opposite parity, |delta-J| = 1, delta-M = 0.
            Parity pa = parity_for(rule_for(a.label, ctx), a.J);
            Parity pb = parity_for(rule_for(b.label, ctx), b.J);
            if (pa == pb)
                ctx.fail("dipole entry " + a.str() + " <-> " + b.str() +
                         " links same-parity states (electric-dipole parity rule)");
            if (std::abs(a.J - b.J) != 1)
                ctx.fail("dipole entry " + a.str() + " <-> " + b.str() +
                         " violates |delta-J| = 1 (z-polarized dipole rule)");
            if (a.M != b.M)
                ctx.fail("dipole entry " + a.str() + " <-> " + b.str() +
                         " violates delta-M = 0 (z-polarized dipole rule)");
            raw_dipoles.push_back({a, b, mu, lineno});
        } else {
            ctx.fail("content outside of any section");
        }
    }

    if (!mass) throw ParseError(origin + ": missing mass in [meta]");
    if (!rot_const) throw ParseError(origin + ": missing rotational_constant in [meta]");
    if (raw_states.empty()) throw ParseError(origin + ": no states defined");

    std::vector<RoVibState> states;
    states.reserve(raw_states.size());
    for (const auto& rs : raw_states) {
        LineCtx ctx{origin, rs.line};
        RoVibState s;
        s.label = rs.key.label;
        s.nu = rs.key.nu;
        s.J = rs.key.J;
        s.M = rs.key.M;
        s.energy = rs.energy_si;
        s.parity = parity_for(rule_for(s.label, ctx), s.J);
        states.push_back(std::move(s));
    }

    auto index_of = [&](const StateKey& key, int linenum) -> int {
        for (std::size_t i = 0; i < states.size(); ++i)
            if (states[i].key() == key) return static_cast<int>(i);
        throw ParseError(origin + ":" + std::to_string(linenum) + ": dipole references unknown state " +
                         key.str());
    };

    std::vector<std::tuple<int, int, double>> dipoles;
    dipoles.reserve(raw_dipoles.size());
    for (const auto& rd : raw_dipoles) {
        int i = index_of(rd.a, rd.line);
        int j = index_of(rd.b, rd.line);
        for (const auto& [pi, pj, mu] : dipoles)
            if ((pi == i && pj == j) || (pi == j && pj == i))
                throw ParseError(origin + ":" + std::to_string(rd.line) + ": duplicate dipole entry " +
                                 rd.a.str() + " <-> " + rd.b.str());
        dipoles.emplace_back(i, j, rd.mu_si);
    }

    return MoleculeModel(name, *mass, *rot_const, ground_label, std::move(rules), std::move(states),
                         std::move(dipoles));
}

MoleculeModel load_molecule(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open molecular data file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return load_molecule_text(ss.str(), path);
}

PairEligibility interference_eligibility(const MoleculeModel& model, int a, int b) {
    const auto& sa = model.state(a);
    const auto& sb = model.state(b);
    if (sa.label != model.ground_label() || sb.label != model.ground_label())
        return {false, "interference-ineligible (not in ground manifold)"};
    if (sa.parity != sb.parity) return {false, "interference-ineligible (opposite parity)"};
    if (std::abs(sa.J - sb.J) != 2) return {false, "interference-ineligible (delta-J != 2)"};
    if (sa.M != sb.M) return {false, "interference-ineligible (delta-M != 0)"};
    return {true, "interference-eligible"};
}

ValidationReport validate_transitions(const MoleculeModel& model) {
    ValidationReport report;
    const int n = static_cast<int>(model.size());
    for (int i = 0; i < n; ++i) {
        for (const auto& p : model.partners(i)) {
            if (p.state < i) continue; // each entry once
            const auto& sa = model.state(i);
            const auto& sb = model.state(p.state);
            if (sa.parity == sb.parity)
                report.violations.push_back({"parity", sa.key(), sb.key(), "same-parity dipole entry"});
            if (std::abs(sa.J - sb.J) != 1)
                report.violations.push_back({"delta-J", sa.key(), sb.key(), "|delta-J| != 1 dipole entry"});
        }
    }
    for (int i = 0; i < n; ++i) {
        if (!model.is_ground(i)) continue;
        for (int j = i + 1; j < n; ++j) {
            if (!model.is_ground(j)) continue;
            if (interference_eligibility(model, i, j).eligible) report.eligible_pairs.emplace_back(i, j);
        }
    }
    return report;
}

} // namespace codep
