#pragma once

#include "k3fod/error.hpp"
#include "k3fod/arith.hpp"
#include "k3fod/bigfloat.hpp"
#include "k3fod/forms.hpp"
#include "k3fod/classgroup.hpp"
#include "k3fod/lattices.hpp"
#include "k3fod/modular.hpp"
#include "k3fod/k3.hpp"
#include "k3fod/io.hpp"
