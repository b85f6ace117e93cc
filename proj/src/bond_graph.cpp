#include "bondmatcher/bond_graph.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace bondmatcher {

const char* to_string(AtomClass c) {
  return c == AtomClass::Oxygen ? "O" : "H";
}

const char* to_string(BondClass c) {
  switch (c) {
    case BondClass::Covalent: return "covalent";
    case BondClass::HydrogenBond: return "hydrogen";
    case BondClass::Misconnected: return "misconnected";
    default: return "unclassified";
  }
}

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

BondGraph classify(const ExtremumGraph& graph, const ClassifyOptions& opts,
                   const AtomList* atoms) {
  BondGraph out;
  out.graph = graph;
  out.atom_class.reserve(graph.nodes.size());
  for (const ExtremumNode& n : graph.nodes)
    out.atom_class.push_back(n.value < opts.oxygen_cut ? AtomClass::Oxygen
                                                       : AtomClass::Hydrogen);

  if (atoms && !atoms->empty()) {
    for (int i = 0; i < static_cast<int>(graph.nodes.size()); ++i) {
      double best = std::numeric_limits<double>::infinity();
      const Atom* nearest = nullptr;
      for (const Atom& a : *atoms) {
        const double d = (a.position - graph.nodes[i].position).norm();
        if (d < best) {
          best = d;
          nearest = &a;
        }
      }
      const bool field_oxygen = out.atom_class[i] == AtomClass::Oxygen;
      const bool listed_oxygen = nearest->atomic_number == 8;
      if (field_oxygen != listed_oxygen) {
        std::ostringstream msg;
        msg << "node " << i << " classified as "
            << to_string(out.atom_class[i]) << " by depth "
            << graph.nodes[i].value << " but nearest nucleus (Z="
            << nearest->atomic_number << ", " << best
            << " A away) disagrees; keeping the field classification";
        out.warnings.push_back(msg.str());
      }
    }
  }

  // Covalent partners per hydrogen node, for donor resolution.
  std::vector<std::vector<int>> covalent_oxygen(graph.nodes.size());
  out.bonds.resize(graph.arcs.size());
  for (int ai = 0; ai < static_cast<int>(graph.arcs.size()); ++ai) {
    const ExtremumArc& arc = graph.arcs[ai];
    BondArc& bond = out.bonds[ai];
    bond.indicators.bcp_density = -arc.saddle_value;
    if (arc.loop) continue;  // stays unclassified
    const AtomClass ca = out.atom_class[arc.endpoints[0]];
    const AtomClass cb = out.atom_class[arc.endpoints[1]];
    if (ca == AtomClass::Oxygen && cb == AtomClass::Oxygen) {
      bond.bond_class = BondClass::Misconnected;
    } else if (ca != cb) {
      const int oxygen =
          ca == AtomClass::Oxygen ? arc.endpoints[0] : arc.endpoints[1];
      const int hydrogen =
          ca == AtomClass::Oxygen ? arc.endpoints[1] : arc.endpoints[0];
      if (arc.saddle_value < opts.covalent_cut) {
        bond.bond_class = BondClass::Covalent;
        covalent_oxygen[hydrogen].push_back(oxygen);
      } else {
        bond.bond_class = BondClass::HydrogenBond;
        bond.acceptor = oxygen;
      }
    }
  }

  for (int ai = 0; ai < static_cast<int>(graph.arcs.size()); ++ai) {
    BondArc& bond = out.bonds[ai];
    if (bond.bond_class != BondClass::HydrogenBond) continue;
    const ExtremumArc& arc = graph.arcs[ai];
    const int hydrogen = *bond.acceptor == arc.endpoints[0] ? arc.endpoints[1]
                                                            : arc.endpoints[0];
    const Eigen::Vector3d h = graph.nodes[hydrogen].position;
    const Eigen::Vector3d ac = graph.nodes[*bond.acceptor].position;
    bond.indicators.length_angstrom = (ac - h).norm();

    double best = std::numeric_limits<double>::infinity();
    for (const int ox : covalent_oxygen[hydrogen]) {
      const double d = (graph.nodes[ox].position - h).norm();
      if (d < best || (d == best && bond.donor && ox < *bond.donor)) {
        best = d;
        bond.donor = ox;
      }
    }
    if (!bond.donor) {
      std::ostringstream msg;
      msg << "hydrogen bond arc " << ai << ": hydrogen node " << hydrogen
          << " has no covalent oxygen, donor unresolved";
      out.warnings.push_back(msg.str());
      continue;
    }
    const Eigen::Vector3d dn = graph.nodes[*bond.donor].position;
    const double denom = (dn - ac).norm() * (h - ac).norm();
    if (denom > 0.0) {
      double c = (dn - ac).dot(h - ac) / denom;
      c = std::min(1.0, std::max(-1.0, c));
      bond.indicators.angle_degrees = std::acos(c) * 180.0 / kPi;
    }
  }

  return out;
}

}  // namespace bondmatcher
