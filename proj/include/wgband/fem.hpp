#pragma once

// fem_core: assembly of the Dirichlet stiffness/mass pencil on quad/hex
// meshes, quasi-periodic dof identification with the Floquet phase jump
// u(+T/2) = e^{i eta} u(-T/2), Dirichlet-elimination bookkeeping, and a
// direct solve for inhomogeneous Dirichlet data (the exterior problem).

#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "wgband/common.hpp"
#include "wgband/geometry.hpp"

namespace wgband {

struct AssemblyOptions {
  // Constrain nodes on cavern-tagged facets. Releasing them (false) turns the
  // cavern surface into a natural boundary on the same mesh, which is the
  // reference problem used for the discrete bracketing check.
  bool constrain_cavern = true;
};

// Discrete pencil (K, M) over merged dofs. Slave nodes (the z = +T/2 copy of
// each periodic pair) share the master's dof; the value at a node is
// node_phase[node] * U[node_dof[node]]. Constrained (Dirichlet) dofs keep
// their rows/columns so inhomogeneous data can be lifted; eigenproblems run
// on the free block.
struct HermitianPencil {
  using SpMatC = Eigen::SparseMatrix<Complex>;
  using SpMatR = Eigen::SparseMatrix<double>;

  SpMatC K;  // stiffness, exactly Hermitian
  SpMatC M;  // mass, Hermitian, positive definite

  std::vector<int> node_dof;
  std::vector<Complex> node_phase;
  std::vector<char> constrained;  // per dof
  std::vector<int> free_index;    // dof -> free slot, -1 when constrained
  std::vector<int> free_dofs;     // free slot -> dof

  double eta = 0.0;
  bool quasi_periodic = false;
  bool real_valued = true;  // all phases are +-1, matrices have zero imag part

  int dof_count() const { return static_cast<int>(constrained.size()); }
  int free_count() const { return static_cast<int>(free_dofs.size()); }

  SpMatC free_K() const { return restrict_free(K); }
  SpMatC free_M() const { return restrict_free(M); }
  SpMatR free_K_real() const { return restrict_free_real(K); }
  SpMatR free_M_real() const { return restrict_free_real(M); }

  // Expand a free-dof coefficient vector to one value per mesh node
  // (constrained dofs contribute zero, slaves get the phase factor).
  Eigen::VectorXcd nodal_values(const Eigen::VectorXcd& free_vec) const;

 private:
  SpMatC restrict_free(const SpMatC& A) const;
  SpMatR restrict_free_real(const SpMatC& A) const;
};

// Assemble over `mesh`. Supplying `eta` merges the periodic pairing with the
// phase jump; this requires a 3D mesh that carries a pairing and is a
// configuration error otherwise. Without `eta` every node keeps its own dof.
HermitianPencil assemble(const Mesh& mesh, std::optional<double> eta = std::nullopt,
                         const AssemblyOptions& opts = {});

// Solve the homogeneous-equation Dirichlet problem K u = 0 with u = g on all
// constrained nodes; g is read only at constrained entries. Real symmetric
// path (no quasi-periodic phases). Returns per-node values including g.
Eigen::VectorXd dirichlet_solve(const HermitianPencil& pencil,
                                const Eigen::VectorXd& boundary_values);

// Dirichlet energy integral |grad u|^2 of a per-node field.
double dirichlet_energy(const HermitianPencil& pencil,
                        const Eigen::VectorXd& nodal_values);

}  // namespace wgband
