// Snapshot of common public-suffix rules. Wildcard rules start with "*.",
// exception rules with "!". Unknown top-level domains fall back to the
// implicit "*" rule (the last label is the suffix).
namespace debatenet::detail {

extern const char* const kPublicSuffixRules[];

const char* const kPublicSuffixRules[] = {
    // generic
    "com", "net", "org", "edu", "gov", "mil", "int", "info", "biz", "name",
    "mobi", "app", "dev", "io", "ai", "co", "me", "tv", "cc", "ws", "xyz",
    "online", "site", "news", "blog", "live", "us", "eu",
    // united kingdom
    "uk", "co.uk", "org.uk", "ac.uk", "gov.uk", "me.uk", "net.uk", "ltd.uk",
    "plc.uk", "sch.uk",
    // australia
    "au", "com.au", "net.au", "org.au", "edu.au", "gov.au", "asn.au", "id.au",
    // japan
    "jp", "co.jp", "ne.jp", "or.jp", "ac.jp", "go.jp", "ad.jp", "ed.jp",
    // brazil
    "br", "com.br", "net.br", "org.br", "gov.br", "edu.br",
    // new zealand
    "nz", "co.nz", "net.nz", "org.nz", "govt.nz", "ac.nz",
    // india
    "in", "co.in", "net.in", "org.in", "firm.in", "gen.in", "ind.in", "ac.in",
    "edu.in", "gov.in",
    // china
    "cn", "com.cn", "net.cn", "org.cn", "gov.cn", "edu.cn", "ac.cn",
    // mexico
    "mx", "com.mx", "org.mx", "net.mx", "gob.mx", "edu.mx",
    // argentina
    "ar", "com.ar", "net.ar", "org.ar", "gob.ar", "edu.ar",
    // south africa
    "za", "co.za", "org.za", "net.za", "web.za", "gov.za", "ac.za",
    // turkey
    "tr", "com.tr", "net.tr", "org.tr", "gov.tr", "edu.tr",
    // south korea
    "kr", "co.kr", "or.kr", "ne.kr", "go.kr", "re.kr", "ac.kr",
    // russia
    "ru", "com.ru", "org.ru", "net.ru",
    // europe, single-level country codes
    "de", "fr", "it", "es", "nl", "se", "no", "fi", "dk", "pl", "ch", "at",
    "be", "cz", "gr", "pt", "ie", "hu", "ro", "sk", "bg", "hr", "lt", "lv",
    "ee", "is", "ua",
    // americas and others
    "ca", "cl", "pe", "ve", "ec", "uy", "il", "sa", "ae", "eg", "ng", "ke",
    "id", "my", "sg", "th", "vn", "ph", "pk", "ir", "tw", "hk",
    // wildcard-ruled ccTLDs kept from the upstream list
    "*.ck", "!www.ck", "*.bd", "*.er", "*.fk", "*.jm", "*.kh", "*.mm",
    nullptr,
};

} // namespace debatenet::detail
