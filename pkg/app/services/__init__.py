# Services layer - rate model, master equation, sweeps, acceptance checks
