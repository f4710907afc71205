#pragma once
// Generated by tests/oracles/gen_literals.py; do not edit by hand.
namespace lit {
inline constexpr double A[] = {0.10000000000000001, 0.69999999999999996, 0.29999999999999999, 0.90000000000000002, 0.5, 0.20000000000000001, 0.80000000000000004, 0.40000000000000002, 0.59999999999999998, 0, 1, 0.25, 0.34999999999999998, 0.45000000000000001, 0.14999999999999999, 0.55000000000000004};
inline constexpr double B[] = {0.20000000000000001, 0.10000000000000001, 0.40000000000000002, 0.29999999999999999, 0.90000000000000002, 0.59999999999999998, 0.5, 0.80000000000000004, 0.050000000000000003, 0.75, 0.65000000000000002, 0.94999999999999996, 0.40000000000000002, 0.29999999999999999, 0.20000000000000001, 0.10000000000000001};
inline constexpr double V[] = {0, 0.32210884361884551, 0.49272486499423007, 0.43160468332443697, 0.16749407507795255, -0.17539161384480992, -0.43578788620679387, -0.49122630631216629, -0.31563331893616081, 0.0084069502421748564, 0.32849329935939453, 0.49408411693850013, 0.42729945404414071, 0.15954918117467606, -0.18323956462596339, -0.43984787998583502, 0.5, 0.13374941431229367, -0.42844437668447366, -0.36296615210006994, 0.23425833565018855, 0.48829381286401174, 0.026977710281324431, -0.47386080106555595, -0.2804921287136144, 0.32379816932693867, 0.4537233907250981, -0.081057218249859134, -0.49708881259190768, -0.1848841319315849, 0.39817623514596157, 0.39790748490697203};
inline constexpr double P[] = {0.11920159847703672, 0.32377922924038155, 0.48453486024306852, 0.57971097096764035, 0.59642592131884553, 0.53241742118002511, 0.39634872076752042, 0.20663608035503397, -0.011043784159832285, -0.22722892429739883, -0.41265969551038445, -0.54223891281018333, -0.59842863701885596, -0.57362385256267079, -0.47118177065326833, -0.30496744649955504, -0.09747720912909251, 0.12320611121073276, 0.32721406238418116, 0.48693512524448923, 0.58075180321889186, 0.59596644905748586, 0.53051983182114759, 0.39326984412885518, 0.20279262794596159, -0.015131619086195232, -0.23100787246066859, -0.41561829400451061, -0.54397672920839835, -0.59871046602412692, -0.57241154994125365, -0.46863941587780289, -0.30143913536217581, -0.093440481990188229, 0.12720490227005551, 0.33063369975321899, 0.48931277704758774, 0.58176566543857, 0.595479300198553, 0.52859760519634169, 0.39017270409427007, 0.19893975787593821, -0.019218751302308733, -0.2347760926510272, -0.41855759124386832, -0.54568928340427425, -0.59896449100006488, -0.57117266460844529, -0.46607529755417121, -0.29789682543399992, -0.089399415488519277, 0.13119778595171561, 0.33403798254002082, 0.49166770523455111, 0.58275251054305732, 0.59496449736517087, 0.52665083057353967, 0.38705744449451168, 0.1950776490717063, -0.023304991002330942, -0.23853340987285973, -0.42147745072790799, -0.54737649586703718, -0.59919070014978604};
inline constexpr double Q[] = {0.64474269580201948, 0.18049502277286869, -0.42318658974055073, -0.69995296416072572, -0.43599972345092902, 0.16476701006811581, 0.63824982762150162, 0.61867922756121052, 0.12117366480392661, -0.46993958411442616, -0.69802050933746485, -0.38687465720934239, 0.22313515644311516, 0.66077116486630827, 0.58795583119981953, 0.060939619705792404, -0.51315296606003014, -0.69083052321963201, -0.33483562842633363, 0.2798226357714777, 0.67831553505733422, 0.55280391713585775, 0.00024657382846142705, -0.552501249857551, -0.67843716120311692, -0.28027459810978606, 0.33440247464398476, 0.69075079297235742, 0.51348825164163592, -0.060448329257366921, -0.58768806193245404, -0.66093377081535531};
inline constexpr double inner_AB = 3.0475000000000003;
inline constexpr double norm_A = 2.1360009363293826;
inline constexpr double tv_V = 7.7297872666817806;
inline constexpr double tv_jac_V = 11.69674491160483;
inline constexpr double grad_A[] = {0.59999999999999998, -0.39999999999999997, 0.60000000000000009, 0, -0.29999999999999999, 0.60000000000000009, -0.40000000000000002, 0, -0.59999999999999998, 1, -0.75, 0, 0.10000000000000003, -0.30000000000000004, 0.40000000000000002, 0, 0.40000000000000002, -0.49999999999999994, 0.5, -0.5, 0.099999999999999978, -0.20000000000000001, 0.19999999999999996, -0.15000000000000002, -0.25, 0.45000000000000001, -0.84999999999999998, 0.30000000000000004, 0, 0, 0, 0};
inline constexpr double div_V[] = {0.5, 0.45585825793113921, -0.2578283553090891, -0.85569101709429995, -0.098247589271858893, 0.011658709628955544, 0.19502581460381416, 0.32489323724130792, -0.83038378329996376, 0.15954462564126259, 0.74683202956099337, 0.064310283456302283, 0.70779158275775511, -0.59154844219640323, -0.79651213652573749, 0.26429678287582253};
inline constexpr double div_tensor_P[] = {0.021724389347944212, 0.32778374197407761, 0.48796969338686813, 0.0024002650014207094, 1.27465493366683, 0.40875183770793266, 0.067237069024461749, -0.49001400188315442, -0.38900295943276259, -0.82728320828124757, -0.94695847549480172, -0.39622844262298135, -0.8012212649648176, 0.0399364035423804, 0.33344995437007108, 0.88680006465777894, -0.76751443291634702, -0.089898172062012338, 0.13124596877172445, 0.0039928836816600921, 1.2894260571417797, 0.88201741905953335, 0.68586556079155958, -0.13171258878509773, 0.58278555212778893, -0.29584320695837135, -0.60583337064959797, -0.59905073706519307, -0.94520842181740794, -0.51418913665491761, -0.24835285666749693, 0.62226948200239585};
inline constexpr double laplacian_A[] = {1, -1.4999999999999996, 1.5000000000000002, -1.0999999999999999, -0.59999999999999987, 1.2, -1.3000000000000003, 0.75, -0.94999999999999984, 2.25, -2.8000000000000003, 1.2000000000000002, 0.35000000000000003, -0.85000000000000009, 1.55, -0.70000000000000007};
inline constexpr double project_V[] = {0.14195487385322283, 0.41719279626294165, 0.36642082803223119, 0, -0.035469916772133764, 0.029516073663142434, 0.084207026048540662, 0, -0.20344431570408639, -0.16449850591191884, 0.070758625136281728, 0, 0.37611956880893144, 0.032462997176719958, -0.3191957656961863, 0, 0.3580451261467773, 0.18062033552142073, -0.20705638707837848, -0.48927018906206893, 0.29526745364705198, 0.12729305471509941, -0.066721524859961898, -0.080169925772220763, -0.33167201394882512, 0.24789187056419279, 0.44485337365283156, 0.054898982820363533, 0, 0, 0, 0};
inline constexpr double pinv_div_V[] = {-0.43756319710018088, -0.29560832324695718, 0.12158447301598507, 0.48800530104821643, -0.079518070953402548, -0.11498798772553734, -0.085471914062393461, -0.0012648880138531465, 0.21574938269364871, 0.01230506698956179, -0.15219343892235615, -0.081434813786073729, -0.11592263125517596, 0.26019693755375478, 0.29265993473047613, -0.026535830965710855};
inline constexpr double alpha = 0.10000000000000001;
inline constexpr double beta = 0.20000000000000001;
inline constexpr double eta1 = 1.5;
inline constexpr double eta2 = 0.69999999999999996;
inline constexpr double H = 10.83069407559949;
inline constexpr double g1 = 2.3916714396441003;
inline constexpr double g2 = 1.7277525525366866;
inline constexpr double l1 = 7.3828976359553913;
inline constexpr double l2 = 1.056125;
inline constexpr double n_from_duals[] = {0.54263698875106703, -0.41734360164318163, 0.62628843996911066, 0, -0.34731979024701642, 0.54515092300104806, -0.47096735865040923, 0, -0.60721919699710725, 1.0472064412087325, -0.67368714217546233, 0, 0.13108475277215992, -0.3431054960418578, 0.35825303680521403, 0, 0.48953705018789456, -0.40041972881018884, 0.56207479583404085, -0.53518100278547898, -0.085978691502277257, -0.34587809825236809, 0.15617741995531645, -0.046542363569736594, -0.19097272601451615, 0.54733122375475096, -0.84298071349583925, 0.18895946548483711, 0, 0, 0, 0};
inline constexpr double u_from_dual[] = {0.062402934359431617, 1.0300223417853664, 0.56814778312564385, 0.6991402212822776, 0.28415177780958989, -0.3269717639641529, 0.56898142291194831, 0.82016391807158018, 0.95302258041614984, 0.40691193261828479, 0.96969286411643296, -0.30464930061924955, 0.092407909243933661, 0.24488268384772022, 0.26634794523156385, 0.91534474976347924};
inline constexpr double psnr_AB = 7.2447270388653795;
}  // namespace lit
