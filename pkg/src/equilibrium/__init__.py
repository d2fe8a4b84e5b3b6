# Quasi-duals and equilibrium census
