"""Fixed benchmark texts: a 25-character password, a 500-character email,
and a 3000-character page. All three stay within the printable95 alphabet
(no newlines or tabs) so every benchmark case can encrypt them as-is.
"""

PASSWORD25 = "Tr0ub4dor&3-Swordfish#77!"

EMAIL500 = (
    "Subject: quarterly key rotation -- Hi team, the rotation window opens on "
    "Friday at 18:00 UTC and closes Sunday night. Please regenerate your "
    "transfer envelopes before Monday's sync, archive the old reference keys "
    "under /keys/2025-Q3, and reply to this thread once your node reports a "
    "clean checksum. Remember: widths below 16 bits are for testing only, "
    "production stays at 18-24 bits. Ping Dana (ext. 4471) if the validator "
    "rejects your batch twice in a row. Thanks! -- M."
    " PS: the door code is 73312."
)

_PAGE_PARAGRAPH = (
    "The lighthouse keeper counted the waves the way other people counted "
    "sheep, and by the forty-first he had usually decided that the sea was "
    "in one of its arguing moods. Tonight the argument was with the north "
    "wind, which kept snatching the crests sideways and flinging them at "
    "the rocks like loose change. He wound the lamp, checked the log, and "
    "wrote the date with a pencil he had sharpened so many times it was "
    "mostly an idea of a pencil. Below, in the cottage, his daughter was "
    "whistling through a blade of grass, and the thin green note climbed "
    "the stairs between the gusts, as the kettle hissed. "
)

PAGE3000 = _PAGE_PARAGRAPH * 5

TEXTS = {
    "password25": PASSWORD25,
    "email500": EMAIL500,
    "page3000": PAGE3000,
}
