#pragma once

#include "rational.hpp"
#include "sparse.hpp"
#include "laurent.hpp"
#include "ore.hpp"
#include "oplang.hpp"
#include "instance.hpp"
#include "generators.hpp"
#include "connection.hpp"
#include "normal_form.hpp"
#include "duality.hpp"
#include "linalg.hpp"
#include "pairing.hpp"
#include "report.hpp"
