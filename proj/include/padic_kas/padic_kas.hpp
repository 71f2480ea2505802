#pragma once

#include "padic_kas/cantor.hpp"
#include "padic_kas/cylinder.hpp"
#include "padic_kas/emit.hpp"
#include "padic_kas/error.hpp"
#include "padic_kas/interleave.hpp"
#include "padic_kas/padic.hpp"
#include "padic_kas/rational.hpp"
#include "padic_kas/superposition.hpp"
#include "padic_kas/table_io.hpp"
#include "padic_kas/verify.hpp"
#include "padic_kas/cli.hpp"
