#pragma once

#include "mhtc/algebra.hpp"
#include "mhtc/braiding.hpp"
#include "mhtc/crossing.hpp"
#include "mhtc/error.hpp"
#include "mhtc/group.hpp"
#include "mhtc/hopf.hpp"
#include "mhtc/instances.hpp"
#include "mhtc/io.hpp"
#include "mhtc/matrix.hpp"
#include "mhtc/modules.hpp"
#include "mhtc/multiplier.hpp"
#include "mhtc/report.hpp"
#include "mhtc/scalar.hpp"
