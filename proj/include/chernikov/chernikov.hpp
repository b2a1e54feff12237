#pragma once

#include "chernikov/field.hpp"
#include "chernikov/poly.hpp"
#include "chernikov/linalg.hpp"
#include "chernikov/blocks.hpp"
#include "chernikov/pencil.hpp"
#include "chernikov/weakeq.hpp"
#include "chernikov/group.hpp"
#include "chernikov/io.hpp"
