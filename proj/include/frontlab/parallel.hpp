#pragma once

namespace frontlab {

// Worker count used by all row-band parallel loops. Defaults to 1; the CLI
// sets it from the config and the FRONTLAB_WORKERS environment variable
// overrides both. Results are bitwise independent of this value: every loop
// writes disjoint output cells from a read-only input buffer, and reductions
// are folded in index order.
int workers();
void set_workers(int n);

// Reads FRONTLAB_WORKERS if set, otherwise keeps the current value.
void apply_worker_env();

}  // namespace frontlab
