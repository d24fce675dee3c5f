#pragma once

#include <bramsey/arrowing.hpp>
#include <bramsey/bigraph.hpp>
#include <bramsey/bitset.hpp>
#include <bramsey/budget.hpp>
#include <bramsey/graph_io.hpp>
#include <bramsey/reproduce.hpp>
#include <bramsey/sat_bridge.hpp>
#include <bramsey/search_engine.hpp>
#include <bramsey/witnesses.hpp>
#include <bramsey/zarankiewicz.hpp>
