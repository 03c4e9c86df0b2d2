#pragma once

#include <cstdint>

#include "carrierflow/system.hpp"

namespace carrierflow {

// Default market data for 2030-style runs.
inline constexpr double kCarbonPrice2030 = 80.0;            // EUR/t
inline constexpr double kElectricityImportPrice = 1000.0;   // EUR/MWh
inline constexpr double kElectricityImportEmission = 0.8;   // t/MWh
inline constexpr double kNaturalGasPrice = 40.0;            // EUR/MWh
inline constexpr double kSmrEfficiency = 0.76;              // MWh H2 per MWh natural gas
inline constexpr double kBlueHydrogenEmission = 0.108;      // t/MWh H2
inline constexpr double kGasPlantEfficiency = 0.61;
inline constexpr double kGasPlantEmissionPerMwhEl = 0.302;  // t/MWh el

/// Four-node desk-scale system: N1, N2 (DE) and N3 (NL) onshore plus one
/// offshore node OFF (DE). Existing gas, nuclear, wind and open-loop hydro;
/// candidate batteries, electrolyzers, a fuel cell and a hydrogen cavern;
/// AC and DC branches (DC sized in integer blocks) and a hydrogen pipeline
/// pair. Only the demand series depend on the seed.
EnergySystem build_miniature_system(std::uint64_t seed = 0, int steps = 24);

}  // namespace carrierflow
