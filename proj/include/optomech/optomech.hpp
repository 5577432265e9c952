#pragma once

/// Umbrella header: the full public surface of the library.
///
/// Layering (each header includes only those above it):
///   errors   -- exception taxonomy and config error codes
///   params   -- physical parameters, steady state, susceptibility, occupancy
///   transfer -- frequency-domain noise-transfer matrices (closed-form + general)
///   spectrum -- homodyne spectra, optimal squeezing, cooperativities
///   drift    -- linearized drift matrices and characteristic polynomials
///   routh    -- Routh-Hurwitz stability table
///   roots    -- companion-matrix polynomial roots (independent stability route)
///   stability-- combined verdicts, analytic threshold, detuning sweeps
///   config   -- run configuration parsing and serialization
///   csv, svg -- deterministic tabular and plot output
///   run      -- task orchestration

#include "optomech/config.hpp"
#include "optomech/csv.hpp"
#include "optomech/drift.hpp"
#include "optomech/errors.hpp"
#include "optomech/params.hpp"
#include "optomech/roots.hpp"
#include "optomech/routh.hpp"
#include "optomech/run.hpp"
#include "optomech/spectrum.hpp"
#include "optomech/stability.hpp"
#include "optomech/svg.hpp"
#include "optomech/transfer.hpp"
