#include "ontohyp/names.hpp"

#include <set>
#include <sstream>

#include "ontohyp/error.hpp"
#include "ontohyp/ontology.hpp"

namespace ontohyp {
namespace {

// Concept names are built from syllables in the style of the classic
// synthetic-ontology benchmarks ("wumpus", "dalpist", "gergit").
constexpr const char* kConceptOnsets =
    "wum yum zum dum rom num tum vum jom gor shum lem ster grim lor brim "
    "dal ger sar por stor twim from fel kur tim boom fol or rim per sor drop "
    "hil thor scrom gom ror dol wor drom fim yom bem gwom bor rif yim jel lir "
    "del lom ar kal bal mop zel quim im tor vel nar";
constexpr const char* kConceptCodas = "pus pist git per por pee ple pin pant gle";

constexpr const char* kAdjectives =
    "rainy liquid brown moderate muffled translucent large fruity salty "
    "amenable pale angry dark opaque cold small dull aggressive overcast shy "
    "strong slow hairy cute muscular smart gregarious gnawing adaptable bushy "
    "warm-blooded bitter sweet sour spicy bright dim loud quiet soft hard "
    "smooth rough shiny matte wet dry hot cool warm frozen sticky slippery "
    "heavy light dense hollow solid fragile sturdy flexible rigid elastic "
    "brittle fuzzy furry feathered scaly spotted striped round square flat "
    "curved sharp blunt narrow wide tall short long thin thick fat slim lean "
    "happy sad calm nervous brave timid bold clumsy graceful lazy busy eager "
    "curious sleepy lively noisy silent friendly hostile gentle fierce wild "
    "tame clever wise foolish honest loyal jealous proud humble polite rude "
    "kind mean cheerful gloomy grumpy jolly playful serious silly funny witty "
    "bored tired hungry thirsty healthy sick clean dirty tidy messy fresh "
    "stale ripe rotten raw cooked crisp crunchy chewy tender juicy creamy "
    "fluffy puffy bumpy lumpy grainy dusty muddy sandy rocky grassy leafy "
    "woody metallic wooden glassy golden silver red blue green yellow orange "
    "purple pink gray white black scarlet crimson ivory beige teal turquoise "
    "maroon cyan magenta fast quick rapid sluggish agile nimble steady shaky "
    "wobbly stable mobile static ancient modern young old new elderly early "
    "late rare common famous obscure simple complex plain fancy elegant "
    "shabby rich poor cheap costly precious worthless useful useless "
    "harmless harmful dangerous safe secure risky lucky unlucky mighty feeble "
    "fragrant smelly stinky odorless bland savory tangy zesty mellow harsh "
    "vivid faint glowing sparkling gleaming murky cloudy sunny windy foggy "
    "stormy snowy icy humid arid misty breezy chilly toasty lukewarm "
    "scalding tiny huge giant vast massive petite compact bulky spacious "
    "cramped deep shallow steep gentle-sloped hilly rugged polished glossy "
    "velvety silky woolly leathery rubbery waxy greasy oily powdery chalky "
    "spongy springy bouncy squishy stiff limp droopy perky sprightly "
    "energetic restless drowsy alert vigilant careless careful cautious "
    "reckless patient impatient generous stingy greedy modest vain shrewd "
    "naive sincere sly cunning devious trusty faithful fickle moody sulky "
    "merry glum somber jovial peppy zany quirky odd peculiar ordinary";

constexpr const char* kMembers =
    "Amy Pamela Jerry Sam Tom John Alice Bob Jessica Susan Jack Noah Oliver "
    "Fae Sally Polly Edward Barbara Debra Nicole Michael Raymond Sharon Helen "
    "Patricia George Stephen Mark Joseph Jason Linda Rachel Jacob Janet "
    "Steven Eric Shirley Andrew William Emily David Brian Angela Ashley "
    "Ronald Michelle Sandra Christopher Emma Jonathan Samantha Karen Scott "
    "Olivia Maria Amanda Mary Rebecca Kathleen Thomas Laura Stephanie Frank "
    "James Robert Richard Charles Daniel Matthew Anthony Donald Paul Kenneth "
    "Kevin Timothy Jeffrey Gary Ryan Larry Justin Benjamin Gregory Samuel "
    "Patrick Alexander Dennis Peter Tyler Aaron Henry Douglas Nathan Zachary "
    "Walter Kyle Harold Carl Arthur Gerald Roger Keith Lawrence Terry Albert "
    "Joe Christian Austin Willie Jesse Ethan Billy Bruce Bryan Ralph Roy "
    "Jordan Eugene Wayne Louis Dylan Alan Juan Gabriel Russell Randy Philip "
    "Harry Vincent Bobby Johnny Logan Elizabeth Jennifer Margaret Lisa Nancy "
    "Betty Dorothy Sarah Kimberly Donna Carol Ruth Melissa Deborah Cynthia "
    "Anna Virginia Catherine Christine Marie Janice Judith Carolyn Martha "
    "Julie Heather Diane Joyce Victoria Kelly Christina Joan Evelyn Lauren "
    "Judy Megan Cheryl Andrea Hannah Jacqueline Gloria Teresa Sara Ann "
    "Madison Frances Kathryn Abigail Alexis Jean Rose Beverly Denise Marilyn "
    "Danielle Brittany Diana Natalie Sophia Isabella Grace Chloe Zoe Lily "
    "Ella Ava Mia Harper Aria Scarlett Layla Nora Riley Hazel Aurora Stella "
    "Lucy Claire Paisley Skylar Savannah Audrey Bella Leah Aubrey Ellie "
    "Penelope Eleanor Addison Naomi Ruby Alyssa Caroline Kennedy Kaylee "
    "Piper Lydia Cora Maya Quinn Sadie Elena Faith Ivy Iris Jade Josie Julia "
    "Kate Luna Molly Paige Tessa Vivian Wendy Yvonne Agnes Beatrice Bianca "
    "Celia Delia Edith Flora Gwen Ingrid Irene Lena Mabel Nina Opal "
    "Priscilla Rhoda Sylvia Thelma Ursula Vera Wanda Adam Blake Caleb Colin "
    "Connor Dean Derek Eli Evan Felix Gavin Grant Hugo Ian Isaac Ivan Jake "
    "Joel Kurt Leo Liam Lucas Luke Marcus Max Miles Neil Oscar Owen Ray Rex "
    "Seth Simon Toby Troy Victor Wade Xavier Zane Abel Brett Chad Clark Cody "
    "Damon Drew Elliot Floyd Glen Hank Jared Kirk Lance Milo Nolan Otis "
    "Perry Quentin Reed Rhett Rudy Shane Spencer Trent Vaughn Warren Wesley "
    "Boris Cecil Dexter Emmett Ford Gordon Herbert Irving Jasper Lester "
    "Morris Norman Oswald Percy Rupert Stanley Theo Ulrich Vernon Wilbur "
    "Alvin Bernard Clyde Dale Edgar Fred Gilbert Howard Leon Martin Nelson "
    "Otto Reggie Sidney Tony Vince Wallace Yusuf Zack Amelia Brenda Carla "
    "Dolores Eileen Fiona Georgia Harriet Imogen Joanna Kristen Loretta "
    "Miranda Nadia Octavia Phoebe Rosalind Selma Tamara Valerie Winifred";

std::vector<std::string> words(const char* text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

struct Split {
  NamePools primary;
  NamePools demo;
};

// Alternate entries between the two pools so both get a similar mix.
void deal(const std::vector<std::string>& all, std::vector<std::string>& a,
          std::vector<std::string>& b) {
  for (std::size_t i = 0; i < all.size(); ++i) (i % 2 == 0 ? a : b).push_back(all[i]);
}

Split build_pools() {
  std::set<std::string> seen;
  std::vector<std::string> members;
  for (auto& m : words(kMembers))
    if (seen.insert(lowercase(m)).second) members.push_back(m);

  std::vector<std::string> adjectives;
  for (auto& a : words(kAdjectives))
    if (seen.insert(a).second) adjectives.push_back(a);

  std::vector<std::string> concepts;
  const auto onsets = words(kConceptOnsets);
  const auto codas = words(kConceptCodas);
  for (const auto& coda : codas)
    for (const auto& onset : onsets) {
      auto c = onset + coda;
      if (seen.insert(c).second) concepts.push_back(std::move(c));
    }

  Split s;
  deal(concepts, s.primary.concepts, s.demo.concepts);
  deal(members, s.primary.members, s.demo.members);
  deal(adjectives, s.primary.properties, s.demo.properties);
  return s;
}

const Split& pools() {
  static const Split s = build_pools();
  return s;
}

std::string take(std::vector<std::string>& from, const char* what) {
  if (from.empty())
    throw PoolExhausted(std::string("name pool exhausted: ") + what);
  auto out = std::move(from.back());
  from.pop_back();
  return out;
}

}  // namespace

const NamePools& primary_pools() { return pools().primary; }
const NamePools& demonstration_pools() { return pools().demo; }

NameSource::NameSource(const NamePools& pools, Rng& rng)
    : concepts_(pools.concepts),
      members_(pools.members),
      properties_(pools.properties) {
  rng.shuffle(concepts_);
  rng.shuffle(members_);
  rng.shuffle(properties_);
}

std::string NameSource::next_concept() { return take(concepts_, "concepts"); }
std::string NameSource::next_member() { return take(members_, "members"); }
std::string NameSource::next_property() {
  return take(properties_, "properties");
}

}  // namespace ontohyp
