#pragma once

#include "scripta/dataset.hpp"
#include "scripta/error.hpp"
#include "scripta/extraction.hpp"
#include "scripta/imaging.hpp"
#include "scripta/label.hpp"
#include "scripta/model_io.hpp"
#include "scripta/models.hpp"
#include "scripta/network.hpp"
#include "scripta/reporting.hpp"
#include "scripta/rng.hpp"
