"""The gold requirement and its two published translations, FV and FRET."""

GOLD_PROPS = ("Scope", "Condition", "Response", "StopCondition")
GOLD_SENTENCE = "in Scope upon Condition Component shall before StopCondition satisfy Response"

GOLD_FV = (
    "G ( ( (Scope & Condition) & Z ! (Scope & Condition)) -> "
    "((Response V ! StopCondition) | ((Scope & X ! Scope) V ! StopCondition)))"
)

_EXIT = "(Scope & (X (! Scope)))"
_PENDING = f"(((! ((! StopCondition) & (Response | {_EXIT}))) & (! {_EXIT})) U StopCondition)"
_BODY = (
    f"(({_EXIT} V (((! Condition) & ((X Condition) & (! {_EXIT}))) -> ((X (! {_PENDING})) & (! {_EXIT})))) "
    f"& (Condition -> (! {_PENDING})))"
)
GOLD_FRET = f"((G ((! ((! Scope) & (X Scope))) | (X {_BODY}))) & (Scope -> {_BODY}))"
