#pragma once

#include <json.hpp>

#include "period_atlas/exactalg/mpoly.hpp"

namespace period_atlas::detail {

nlohmann::json poly_to_json(const exactalg::MPoly& p);
exactalg::MPoly poly_from_json(const nlohmann::json& j);

}  // namespace period_atlas::detail
