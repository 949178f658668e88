# Topic vocabularies for the demo corpus. Alternative spellings are listed as
# (main, variant, variant share).

TOPICS = {
    "clothing": [
        "សម្លៀកបំពាក់", "អាវ", "ខោ", "ស្បែកជើង", "មួក", "ម៉ូដ", "រ៉ូប",
        "សំពត់", "ក្រមា", "ស្លៀកពាក់", "ហាង", "ទិញ", "តម្លៃ", "ស្អាត", "ពណ៌", "កាបូប",
    ],
    "music": [
        "ចម្រៀង", "តន្ត្រី", "បទ", "ច្រៀង", "សិល្បៈ", "ភ្លេង", "របាំ",
        "កម្សាន្ត", "ទស្សនិកជន", "ល្ខោន", "សិល្បករ", "វប្បធម៌",
    ],
    "society": [
        "ស្ត្រី", "បុរស", "កុមារ", "សិទ្ធិ", "សង្គម", "គ្រួសារ", "សហគមន៍",
        "ការងារ", "អង្គការ", "សម្លាញ់", "មិត្តភក្តិ", "សមភាព",
    ],
    "economy": [
        "សេដ្ឋកិច្ច", "ទីផ្សារ", "ធនាគារ", "ប្រាក់", "ពាណិជ្ជកម្ម", "កសិករ",
        "ស្រូវ", "នាំចេញ", "ការវិនិយោគ", "ក្រុមហ៊ុន", "ពន្ធ", "កម្ចី", "បម្លែង",
    ],
    "education": [
        "សាលា", "សិស្ស", "គ្រូ", "សៀវភៅ", "សាកលវិទ្យាល័យ", "ការអប់រំ",
        "ប្រឡង", "ថ្នាក់", "និស្សិត", "ចំណេះដឹង", "រៀន",
    ],
    "health": [
        "សុខភាព", "មន្ទីរពេទ្យ", "វេជ្ជបណ្ឌិត", "ជំងឺ", "ថ្នាំ", "ការព្យាបាល",
        "វ៉ាក់សាំង", "កម្ចាត់", "មេរោគ", "អនាម័យ",
    ],
    "transport": [
        "ផ្លូវ", "ឡាន", "ម៉ូតូ", "ស្ពាន", "ចរាចរណ៍", "គ្រោះថ្នាក់",
        "អ្នកបើកបរ", "កង់", "រថភ្លើង", "យន្តហោះ",
    ],
    "sport": [
        "កីឡា", "បាល់ទាត់", "ក្រុម", "ការប្រកួត", "កីឡាករ", "ជ័យជំនះ",
        "ពានរង្វាន់", "ហ្វឹកហាត់", "ប្រដាល់", "កីឡដ្ឋាន",
    ],
    "places": [
        "ភ្នំពេញ", "សៀមរាប", "កំពត", "បាត់ដំបង", "កម្ពុជា", "រដ្ឋាភិបាល",
        "ប្រទេស", "ខេត្ត", "ប្រជាជន",
    ],
}

FUNCTION_WORDS = [
    "និង", "ជា", "នៅ", "មាន", "បាន", "ក្នុង", "របស់", "ដែល", "ថា", "ពី",
    "ទៅ", "នេះ", "ខ្ញុំ", "យើង", "គាត់", "ថ្ងៃ", "ឆ្នាំ", "ច្រើន", "ល្អ", "ធំ", "ថ្មី",
]

FOREIGN = ["ASEAN", "2024", "COVID-19", "Wi-Fi", "100%"]

# word -> (variant spelling, share of occurrences written with the variant)
VARIANTS = {
    "ចម្រៀង": ("ចំរៀង", 0.15),
    "សម្លៀកបំពាក់": ("សំលៀកបំពាក់", 0.25),
    "ជ័យជំនះ": ("ជ័យជម្នះ", 0.3),
    "បម្លែង": ("បំលែង", 0.3),
    "កម្ចាត់": ("កំចាត់", 0.3),
    "សម្លាញ់": ("សំឡាញ់", 0.3),
    "កម្ចី": ("កំចី", 0.3),
}

# Typed orders of ស្ត្រី seen in the corpus besides the canonical one.
STREI_ORDERS = [
    ("ស្រ្តី", 0.12),
    ("សី្ត្រ", 0.05),
]
