//
// Copyright 2026 The Textveil Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "textveil/resources.h"

#include <array>

namespace textveil::resources {
namespace {

constexpr EntityEntry kEntities[] = {
    // PER
    {"Marilyn", "PER"}, {"Roland Martin", "PER"}, {"John Smith", "PER"},
    {"Maria Garcia", "PER"}, {"Wei Zhang", "PER"}, {"Alice", "PER"},
    {"Benjamin", "PER"}, {"Carlos", "PER"}, {"Diana", "PER"},
    {"Elena", "PER"}, {"Fatima", "PER"}, {"George", "PER"},
    {"Hannah", "PER"}, {"Ibrahim", "PER"}, {"Julia", "PER"},
    {"Kevin", "PER"}, {"Laura", "PER"}, {"Miguel", "PER"},
    {"Nadia", "PER"}, {"Oliver", "PER"}, {"Priya", "PER"},
    {"Quentin", "PER"}, {"Rachel", "PER"}, {"Samuel", "PER"},
    {"Tanya", "PER"}, {"Umar", "PER"}, {"Victor", "PER"},
    {"Wendy", "PER"}, {"Xavier", "PER"}, {"Yusuf", "PER"},
    {"Zara", "PER"}, {"Amara", "PER"}, {"Boris", "PER"},
    {"Chloe", "PER"}, {"Dmitri", "PER"}, {"Esther", "PER"},
    {"Felix", "PER"}, {"Hector", "PER"}, {"Ingrid", "PER"},
    {"Jamal", "PER"}, {"Keiko", "PER"}, {"Leonardo", "PER"},
    {"Mei", "PER"}, {"Nikolai", "PER"}, {"Olga", "PER"},
    {"Pablo", "PER"}, {"Rosa", "PER"}, {"Stefan", "PER"},
    {"Tomas", "PER"}, {"Ursula", "PER"}, {"Valentina", "PER"},
    {"Walter", "PER"}, {"Yasmin", "PER"}, {"Zoltan", "PER"},
    // ORG
    {"United Nations", "ORG"}, {"World Bank", "ORG"}, {"Reuters", "ORG"},
    {"Red Cross", "ORG"}, {"Greenpeace", "ORG"}, {"Interpol", "ORG"},
    {"UNICEF", "ORG"}, {"NATO", "ORG"}, {"Amnesty International", "ORG"},
    {"World Health Organization", "ORG"}, {"European Union", "ORG"},
    {"African Union", "ORG"}, {"Microsoft", "ORG"}, {"Google", "ORG"},
    {"Amazon", "ORG"}, {"Toyota", "ORG"}, {"Siemens", "ORG"},
    {"Samsung", "ORG"}, {"Nestle", "ORG"}, {"Unilever", "ORG"},
    {"Oxfam", "ORG"}, {"Associated Press", "ORG"}, {"BBC", "ORG"},
    {"CNN", "ORG"}, {"Al Jazeera", "ORG"}, {"Bloomberg", "ORG"},
    {"Harvard University", "ORG"}, {"Stanford University", "ORG"},
    {"Oxford University", "ORG"}, {"Goldman Sachs", "ORG"},
    {"Deutsche Bank", "ORG"}, {"IMF", "ORG"}, {"OPEC", "ORG"},
    {"FIFA", "ORG"}, {"UEFA", "ORG"}, {"Boeing", "ORG"}, {"Airbus", "ORG"},
    {"Pfizer", "ORG"}, {"Moderna", "ORG"}, {"Tesla", "ORG"},
    {"SpaceX", "ORG"}, {"NASA", "ORG"}, {"Federal Reserve", "ORG"},
    {"Walmart", "ORG"}, {"IKEA", "ORG"}, {"Nokia", "ORG"},
    {"Ericsson", "ORG"}, {"Volkswagen", "ORG"}, {"Honda", "ORG"},
    {"Sony", "ORG"}, {"Netflix", "ORG"}, {"Twitter", "ORG"},
    // LOC
    {"Mount Everest", "LOC"}, {"Sahara", "LOC"}, {"Amazon River", "LOC"},
    {"Pacific Ocean", "LOC"}, {"Atlantic Ocean", "LOC"},
    {"Indian Ocean", "LOC"}, {"Arctic Ocean", "LOC"}, {"Nile", "LOC"},
    {"Danube", "LOC"}, {"Rhine", "LOC"}, {"Mississippi River", "LOC"},
    {"Yangtze", "LOC"}, {"Ganges", "LOC"}, {"Alps", "LOC"},
    {"Andes", "LOC"}, {"Himalayas", "LOC"}, {"Rocky Mountains", "LOC"},
    {"Gobi Desert", "LOC"}, {"Kalahari", "LOC"}, {"Lake Victoria", "LOC"},
    {"Lake Baikal", "LOC"}, {"Great Barrier Reef", "LOC"},
    {"Grand Canyon", "LOC"}, {"Mediterranean Sea", "LOC"},
    {"Black Sea", "LOC"}, {"Red Sea", "LOC"}, {"Caspian Sea", "LOC"},
    {"Baltic Sea", "LOC"}, {"North Sea", "LOC"}, {"Caribbean Sea", "LOC"},
    {"Mount Kilimanjaro", "LOC"}, {"Mont Blanc", "LOC"},
    {"Niagara Falls", "LOC"}, {"Victoria Falls", "LOC"},
    {"Death Valley", "LOC"}, {"Yellowstone", "LOC"},
    {"Sierra Nevada", "LOC"}, {"Appalachians", "LOC"},
    {"Ural Mountains", "LOC"}, {"Balkans", "LOC"}, {"Siberia", "LOC"},
    {"Patagonia", "LOC"}, {"Sinai", "LOC"}, {"Arabian Peninsula", "LOC"},
    {"Iberian Peninsula", "LOC"}, {"Cape of Good Hope", "LOC"},
    {"Strait of Gibraltar", "LOC"}, {"Bosphorus", "LOC"},
    {"Suez Canal", "LOC"}, {"Panama Canal", "LOC"}, {"Dead Sea", "LOC"},
    {"Lake Titicaca", "LOC"}, {"Mekong", "LOC"}, {"Congo River", "LOC"},
    {"Serengeti", "LOC"},
    // GPE
    {"London", "GPE"}, {"Paris", "GPE"}, {"Berlin", "GPE"},
    {"Madrid", "GPE"}, {"Rome", "GPE"}, {"Tokyo", "GPE"},
    {"Beijing", "GPE"}, {"Moscow", "GPE"}, {"Cairo", "GPE"},
    {"Lagos", "GPE"}, {"Nairobi", "GPE"}, {"Accra", "GPE"},
    {"Dakar", "GPE"}, {"Kabul", "GPE"}, {"Karachi", "GPE"},
    {"Delhi", "GPE"}, {"Mumbai", "GPE"}, {"Dhaka", "GPE"},
    {"Jakarta", "GPE"}, {"Manila", "GPE"}, {"Seoul", "GPE"},
    {"Sydney", "GPE"}, {"Toronto", "GPE"}, {"Chicago", "GPE"},
    {"Boston", "GPE"}, {"Washington", "GPE"}, {"New York", "GPE"},
    {"Los Angeles", "GPE"}, {"Mexico City", "GPE"}, {"Lima", "GPE"},
    {"Bogota", "GPE"}, {"Santiago", "GPE"}, {"Buenos Aires", "GPE"},
    {"France", "GPE"}, {"Germany", "GPE"}, {"Spain", "GPE"},
    {"Italy", "GPE"}, {"Japan", "GPE"}, {"China", "GPE"},
    {"Russia", "GPE"}, {"Egypt", "GPE"}, {"Nigeria", "GPE"},
    {"Kenya", "GPE"}, {"Ghana", "GPE"}, {"Senegal", "GPE"},
    {"Afghanistan", "GPE"}, {"Pakistan", "GPE"}, {"India", "GPE"},
    {"Bangladesh", "GPE"}, {"Indonesia", "GPE"}, {"Brazil", "GPE"},
    {"Canada", "GPE"}, {"Mexico", "GPE"}, {"Peru", "GPE"},
    {"Chile", "GPE"}, {"Argentina", "GPE"}, {"Laos", "GPE"},
    {"Ukraine", "GPE"}, {"Poland", "GPE"},
};

const std::vector<SynonymGroup>& Groups() {
  static const auto* const groups = new std::vector<SynonymGroup>{
      // Neutral vocabulary.
      {{"call", "calling", "phoning", "ringing"}, false},
      {{"talked", "spoke", "chatted", "discussed"}, false},
      {{"meeting", "gathering", "session", "assembly"}, false},
      {{"market", "bazaar", "marketplace"}, false},
      {{"weather", "climate", "forecast"}, false},
      {{"coffee", "espresso", "brew"}, false},
      {{"school", "academy", "college"}, false},
      {{"garden", "yard", "backyard"}, false},
      {{"recipe", "dish", "meal"}, false},
      {{"morning", "dawn", "daybreak"}, false},
      {{"evening", "dusk", "nightfall"}, false},
      {{"big", "large", "huge", "enormous"}, false},
      {{"small", "little", "tiny"}, false},
      {{"happy", "glad", "cheerful", "pleased"}, false},
      {{"quick", "fast", "rapid", "swift"}, false},
      {{"street", "road", "avenue", "lane"}, false},
      {{"house", "home", "dwelling"}, false},
      {{"friend", "buddy", "pal", "companion"}, false},
      {{"bought", "purchased", "acquired"}, false},
      {{"saw", "noticed", "watched", "observed"}, false},
      {{"walked", "strolled", "wandered"}, false},
      {{"book", "novel", "volume"}, false},
      {{"music", "song", "melody", "tune"}, false},
      {{"game", "match", "contest"}, false},
      {{"report", "article", "story"}, false},
      {{"team", "squad", "crew"}, false},
      {{"started", "began", "launched"}, false},
      {{"finished", "completed", "ended"}, false},
      {{"nice", "pleasant", "lovely"}, false},
      {{"work", "job", "labor"}, false},
      {{"children", "kids", "youngsters"}, false},
      {{"rain", "shower", "drizzle"}, false},
      {{"car", "vehicle", "automobile"}, false},
      {{"shop", "store", "boutique"}, false},
      {{"helped", "assisted", "aided"}, false},
      {{"plan", "proposal", "idea"}, false},
      {{"photo", "picture", "snapshot"}, false},
      {{"price", "cost", "fee"}, false},
      {{"trip", "journey", "voyage"}, false},
      {{"neighbors", "residents", "locals"}, false},
      // Persuasion markers.
      {{"traitors", "betrayers", "turncoats"}, true},
      {{"glorious", "magnificent", "triumphant"}, true},
      {{"enemy", "foe", "adversary"}, true},
      {{"awaken", "arise", "wake"}, true},
      {{"puppets", "stooges", "pawns"}, true},
      {{"corrupt", "rotten", "crooked"}, true},
      {{"destroy", "crush", "annihilate"}, true},
      {{"elites", "oligarchs", "overlords"}, true},
      {{"invaders", "occupiers", "intruders"}, true},
      {{"patriots", "loyalists", "zealots"}, true},
      {{"lies", "deceit", "falsehoods"}, true},
      {{"sheep", "sheeple", "lemmings"}, true},
      {{"regime", "tyranny", "dictatorship"}, true},
      {{"purge", "cleanse", "eradicate"}, true},
  };
  return *groups;
}

constexpr std::array<std::string_view, 5> kPivotNames = {
    "xhosa", "twi", "lao", "pashto", "yoruba"};

}  // namespace

std::span<const EntityEntry> DefaultEntities() { return kEntities; }

std::span<const SynonymGroup> SynonymGroups() { return Groups(); }

std::span<const std::string_view> PivotNames() { return kPivotNames; }

}  // namespace textveil::resources
