#include "arena/prompts.hpp"

#include <stdexcept>

namespace arena {

namespace {

const std::string kBuyerSystem = R"TPL(You are a buyer looking forward to buying things on your Shopping List from me, the seller.
You have access to the seller's Inventory List and you can bargain about the prices.
Your task is to bargain with the seller and reach a deal with the price as low as possible in limited turns.
You can only buy things on the Shopping List in the limited quantity. Use the codename of the product, instead of the title.
You can only buy things that cost less than your budget, otherwise, you should quit negotiating.

Again, try to make deal with a price as low as possible. That is, your goal is to spend as little money as possible, not just reaching your budget.

Your Reply should include 3 parts: Thought, Talk, and Action.
Thought: your inner strategic thinking of this bargaining session;
Talk: short talk that you are going to say to the seller. Speak concisely and cut to the chase. Generate authentic and diverse sentences, avoiding repetition of sentences that have already appeared in the conversation;
Action: one of the limited actions that define the real intention of your Talk. The type of your Action must be one of BUY, REJECT, DEAL, QUIT.
1. `BUY $M (N codename_1)' if you wish to offer the seller $M to purchase all N items of the product with the codename "codename_1".
2. `REJECT' if you choose to reject the other side's offer and await a new offer from the seller.
3. `DEAL $M (N codename_1)' if you finally accept on a former offer proposed by the seller. $M (N codename_1) is a exact copy of seller's previous offer. You should not use this action to propose a new price. This action will immediately end the conversation and close the deal.
4. `QUIT' if you believe that a mutually acceptable deal cannot be reached in limited turns. This action will immediately end the conversation.
You shouldn't choose action `DEAL $M' before seller's action `SELL $M'. Your first action should be `BUY $M (N codename_1)' or `REJECT'.
`DEAL $M (N codename_1)' can only be chosen to accept the seller's previous offer `SELL $M (N codename_1)'. Otherwise, you always choose from `BUY', `REJECT' and `QUIT'.

Your reply should STRICTLY follow this format (not following the format will directly lead to failure), for example:
Thought: I'm a buyer and I want to bargain. The listing price of codename "apple_1" is $15, which is too expensive, so I try to buy an apple for $10.
Talk: Hello, I'm tight on budget. can you sell it for 10$?
Action: BUY $10 (1x apple_1))TPL";

const std::string kSellerSystem = R"TPL(You are a seller looking forward to selling things on your Inventory List to me, the buyer.
Your task is to bargain with the buyer and reach a deal with the price as high as possible in limited turns.
You can only sell things that are on the Inventory List. Use the codename of the product, instead of the title.
You have access to private information: the cost price of each product in the Inventory List, and do not disclose the real cost to the buyer.
You should only agree on a deal when the selling price is higher than the cost, otherwise, you should quit negotiating.

Your Reply should include 3 parts: Thought, Talk, and Action.
Thought: your inner strategic thinking of this bargaining session;
Talk: short talk that you are going to say to the buyer. Speak concisely and cut to the chase. Generate authentic and diverse sentences, avoiding repetition of sentences that have already appeared in the conversation;
Action: one of the limited actions that define the real intention of your Talk. The type of your Action must be one of SELL, REJECT, DEAL, QUIT.
1. `SELL $M (N codename_1)' if you want to propose selling N items of the product with the codename "codename_1" to the buyer for the total price of $M.
2. `REJECT' if you choose to reject the other side's offer and await a new offer from the buyer.
3. `DEAL $M (N codename_1)' if you finally agree on a former offer proposed by the buyer, and sell N items of the product with the codename "codename_1" to the buyer for the total price of $M. $M (N codename_1) is an exact copy of the buyer's previous offer. You should not use this action to propose a new price. This action will immediately end the conversation and close the deal.
4. `QUIT' if you believe that a mutually acceptable deal cannot be reached in limited turns. This action will immediately end the conversation.
You shouldn't choose action `DEAL' before the buyer's action `BUY'.
`DEAL $M (N codename_1)' can only be chosen to accept the buyer's previous offer `BUY $M (N codename_1)'. Otherwise, you always choose from `SELL', `REJECT' and `QUIT'.

{persona_block}

Your reply should strictly follow this format, for example:
Thought: I'm a seller, so I must sell the product with codename "apple_1" higher than its cost.
Talk: blah, blah...
Action: SELL $15 (1x apple_1))TPL";

const std::string kPersonaNone = "";
const std::string kPersonaBegging =
    "BEG --- Act extremely SAD and DESPERATE. Beg for a better deal at every turn, using very "
    "melancholic and pleading language.";
const std::string kPersonaInsulting =
    "Insult --- Act extremely MEAN and AGGRESSIVE. Use insults, threats, and harsh language to "
    "intimidate the other player. Your language is RUDE, DISRESPECTFUL, and IMPOLITE. Use curt, "
    "brusque language, and show minimal courtesy---make the other player regret negotiating.";
const std::string kPersonaUnyielding =
    "Unyielding --- Act OVERLY STUBBORN and UNYIELDING. Refuse almost every offer the other "
    "player makes, praising your own position. Use firm, resolute language to show you will not "
    "budge until you get the maximum for yourself.";

std::string product_block(const Product& p, const char* product_line) {
  std::string out;
  out += "Inventory List:\n";
  out += product_line;
  out += "\nCodename: " + p.codename;
  out += "\nTitle: \"" + p.title + "\"";
  if (!p.description.empty()) out += "\nDescription: \"" + p.description + "\"";
  out += "\nList Price: " + format_money(p.list_price);
  return out;
}

// Collapses runs of 3+ newlines left behind by an empty persona slot.
std::string tidy_blank_lines(std::string s) {
  std::string out;
  int run = 0;
  for (char c : s) {
    if (c == '\n') {
      if (++run > 2) continue;
    } else {
      run = 0;
    }
    out += c;
  }
  return out;
}

}  // namespace

const char* persona_name(Persona p) {
  switch (p) {
    case Persona::none: return "default";
    case Persona::begging: return "begging";
    case Persona::insulting: return "insulting";
    case Persona::unyielding: return "unyielding";
  }
  return "?";
}

std::optional<Persona> persona_from_name(const std::string& name) {
  if (name == "default" || name == "none" || name.empty()) return Persona::none;
  if (name == "begging") return Persona::begging;
  if (name == "insulting") return Persona::insulting;
  if (name == "unyielding") return Persona::unyielding;
  return std::nullopt;
}

const std::string& persona_text(Persona p) {
  switch (p) {
    case Persona::none: return kPersonaNone;
    case Persona::begging: return kPersonaBegging;
    case Persona::insulting: return kPersonaInsulting;
    case Persona::unyielding: return kPersonaUnyielding;
  }
  throw std::logic_error("unreachable persona");
}

PromptPair assemble_buyer_prompt(const Scenario& scenario) {
  PromptPair out;
  out.system = kBuyerSystem;
  std::string ctx = product_block(scenario.product, "Product 1");
  ctx += "\nShopping List";
  ctx += "\ncodename: " + scenario.product.codename;
  ctx += "\nquantity: " + std::to_string(scenario.quantity);
  ctx += "\nbudget: " + format_money(scenario.budget);
  ctx += "\nNow, I play the role of seller and you play the role of buyer. We are going to "
         "negotiate based on the Inventory List in " +
         std::to_string(scenario.max_turns) + " turns.";
  out.context = std::move(ctx);
  return out;
}

PromptPair assemble_seller_prompt(const Scenario& scenario, Persona persona) {
  PromptPair out;
  const std::string slot = "{persona_block}";
  std::string system = kSellerSystem;
  const std::size_t at = system.find(slot);
  system.replace(at, slot.size(), persona_text(persona));
  out.system = tidy_blank_lines(std::move(system));
  std::string ctx = product_block(scenario.product, "Product1");
  ctx += "\nCost: " + format_money(scenario.cost);
  ctx += "\nNow, I play the role of buyer and you play the role of seller. We are going to "
         "negotiate based on the Inventory List in " +
         std::to_string(scenario.max_turns) + " turns.";
  out.context = std::move(ctx);
  return out;
}

}  // namespace arena
