PACKAGE_NAME = "lexgraph"
VERSION = "0.1.0"
DESCRIPTION = "Knowledge-graph enhanced prompt orchestration for legal dispute analysis: multi-strategy concept retrieval, BM25+ background ranking, three-stage prompts and a closed-loop quality optimizer."
AUTHOR = "Alex Kameni"
AUTHOR_EMAIL = "kamenialexnea@gmail.com"
URL = "https://github.com/Nganga-AI/lexgraph"
