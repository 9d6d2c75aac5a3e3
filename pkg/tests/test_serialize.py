"""Profile document round-trips."""

import pytest

from lobbygame.core import all_histories
from lobbygame.equilibrium import lemma1_equilibrium, lemma2_equilibrium
from lobbygame.errors import MalformedProfileError
from lobbygame.serialize import dumps_profile, loads_profile
from lobbygame.verify import verify_equilibrium


def _assert_round_trip(profile, params):
    text = dumps_profile(profile, params)
    loaded, loaded_params = loads_profile(text)
    assert loaded_params == params
    assert loaded.lobby1 == profile.lobby1
    assert loaded.lobby2 == profile.lobby2
    assert loaded.access.gamma1 == profile.access.gamma1
    assert loaded.access.lone_grant == profile.access.lone_grant
    for hist in all_histories(profile.access.lone_grant):
        assert loaded.policy.action(hist) == profile.policy.action(hist)
        for group in (1, 2):
            assert (loaded.beliefs.policy_belief(group, hist)
                    == profile.beliefs.policy_belief(group, hist))
    assert loaded.beliefs.access1 == profile.beliefs.access1
    assert loaded.beliefs.access2 == profile.beliefs.access2
    # serialization is exact, so the reloaded profile is still an equilibrium
    assert verify_equilibrium(loaded, loaded_params).passed
    assert dumps_profile(loaded, loaded_params) == text


def test_overlobby_round_trip(overlobby_params):
    _assert_round_trip(lemma1_equilibrium(overlobby_params), overlobby_params)


def test_truthful_round_trip(truthful_params):
    _assert_round_trip(lemma1_equilibrium(truthful_params), truthful_params)


def test_case1_round_trip(case1_params):
    _assert_round_trip(lemma2_equilibrium(case1_params), case1_params)


def test_case2_round_trip(case2_params):
    _assert_round_trip(lemma2_equilibrium(case2_params), case2_params)


def test_comments_and_blank_lines_ignored(overlobby_params):
    text = dumps_profile(lemma1_equilibrium(overlobby_params), overlobby_params)
    noisy = "# leading comment\n\n" + text + "\n# trailing\n"
    profile, params = loads_profile(noisy)
    assert params == overlobby_params


@pytest.mark.parametrize("mutation, message", [
    (lambda t: t.replace("gamma1 = ", "gamma_one = "), "gamma1"),
    (lambda t: "\n".join(l for l in t.splitlines() if "rho2_L11_A10_R1" not in l),
     "L11_A10_R1"),
    (lambda t: t + "mystery = 1\n", "mystery"),
    (lambda t: t + "pi1 = 0.3\n", "duplicate"),
    (lambda t: t.replace("xi1_on = 1.0", "xi1_on = maybe"), "xi1_on"),
])
def test_malformed_documents_rejected(overlobby_params, mutation, message):
    text = dumps_profile(lemma1_equilibrium(overlobby_params), overlobby_params)
    with pytest.raises(MalformedProfileError) as err:
        loads_profile(mutation(text))
    assert message in str(err.value)
