"""How the textual cohesion score behind Lack of Cohesion is built.

Each test case becomes a bag of words: identifiers split on underscores and
camel case, plus the words inside string literals. Two cases are compared by
the cosine of their term-frequency vectors and a suite scores the mean over
all pairs of its cases.
"""

# %%
from smellscan.cohesion import cosine, mean_pairwise_cosine, split_identifier, terms

print(split_identifier("assertHTTPResponse_ok"))

# %%
login = terms("def test_login(self):\n    user = make_user('alice')\n    self.assertTrue(user.login('pw'))\n")
logout = terms("def test_logout(self):\n    user = make_user('alice')\n    user.logout()\n    self.assertFalse(user.online)\n")
parse = terms("def test_parse_csv(self):\n    rows = parse_csv('a,b')\n    self.assertEqual(len(rows), 1)\n")
print(login)
print(f"login~logout {cosine(login, logout):.3f}")
print(f"login~parse  {cosine(login, parse):.3f}")

# %% [markdown]
# A suite is flagged when its mean similarity is at or below the threshold,
# 0.4 unless configured otherwise.

# %%
for name, cases in {"account": [login, logout], "mixed": [login, logout, parse], "unrelated": [login, parse]}.items():
    mean = mean_pairwise_cosine(cases)
    print(f"{name:9} mean={mean:.2f}  flagged={mean <= 0.4}")
