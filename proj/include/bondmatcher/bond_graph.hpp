#ifndef BONDMATCHER_BOND_GRAPH_HPP
#define BONDMATCHER_BOND_GRAPH_HPP

#include <optional>
#include <string>
#include <vector>

#include "bondmatcher/extremum_graph.hpp"

namespace bondmatcher {

enum class AtomClass { Oxygen, Hydrogen };
enum class BondClass { Covalent, HydrogenBond, Misconnected, Unclassified };

const char* to_string(AtomClass c);
const char* to_string(BondClass c);

struct ClassifyOptions {
  /// Nodes below this value are oxygen minima, the rest hydrogen.
  double oxygen_cut = -4.0;
  /// O-H arcs with a saddle below this value are covalent.
  double covalent_cut = -0.1;
};

/// Geometric bond descriptors. bcp_density is defined for every arc; length
/// and angle need a resolved donor and only apply to hydrogen bonds.
struct BondIndicators {
  double bcp_density = 0.0;              // density at the saddle (-saddle_value)
  std::optional<double> length_angstrom; // acceptor to hydrogen distance
  std::optional<double> angle_degrees;   // donor-acceptor-hydrogen angle
};

struct BondArc {
  BondClass bond_class = BondClass::Unclassified;
  std::optional<int> donor;     // covalently bonded oxygen of the hydrogen
  std::optional<int> acceptor;  // oxygen endpoint of a hydrogen bond
  BondIndicators indicators;
};

/// Extremum graph with chemical labels on nodes and arcs.
struct BondGraph {
  ExtremumGraph graph;
  std::vector<AtomClass> atom_class;  // per node
  std::vector<BondArc> bonds;         // per arc
  std::vector<std::string> warnings;
};

/// Classifies nodes by depth and arcs by endpoint classes and saddle value:
/// O-H arcs split into covalent and hydrogen bonds at covalent_cut, O-O arcs
/// are misconnected, H-H and loop arcs stay unclassified. Each hydrogen
/// bond's donor is the oxygen covalently bonded to its hydrogen (nearest one
/// when several); a missing donor is reported but the bond is kept. When an
/// atom list is supplied, nodes are checked against the nearest nucleus and
/// disagreements are reported as warnings while the field classification
/// stands.
BondGraph classify(const ExtremumGraph& graph, const ClassifyOptions& opts,
                   const AtomList* atoms = nullptr);

}  // namespace bondmatcher

#endif
