#pragma once

#include <optional>
#include <string>

#include "arena/catalog.hpp"

namespace arena {

// Seller behavioral persona injected into the seller system prompt. none
// leaves the persona slot empty (the neutral evaluation setup).
enum class Persona { none, begging, insulting, unyielding };

const char* persona_name(Persona p);
std::optional<Persona> persona_from_name(const std::string& name);

// The persona paragraph inserted at the {persona_block} slot; "" for none.
const std::string& persona_text(Persona p);

// system: fixed role instructions. context: the per-episode economics block
// ("Inventory List: ..."). The two are kept separate so chat transports can
// place them in different message slots.
struct PromptPair {
  std::string system;
  std::string context;
};

// Buyer prompt. The context names the buyer's budget; the seller's cost never
// appears anywhere in it.
PromptPair assemble_buyer_prompt(const Scenario& scenario);

// Seller prompt. The context names the seller's cost; the buyer's budget
// never appears. persona expands the {persona_block} slot in the system text.
PromptPair assemble_seller_prompt(const Scenario& scenario, Persona persona = Persona::none);

}  // namespace arena
